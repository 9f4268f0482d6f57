#include "weillift/cli.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "weillift/analysis.hpp"
#include "weillift/json_io.hpp"
#include "weillift/theta.hpp"

namespace weillift::cli {
namespace {

struct Opts {
  std::string lattice;
  std::uint64_t seed = 0;
  double budget = kDefaultWorkBudget;
  // per subcommand
  std::string z, zprime, d, beta = "0", gen, matrix, method = "shintani", split, a = "1", C,
                               suite, coset, prec_rat = "2";
  int kappa = 4, bound = -1, l = -1;
  i64 prec = 20;
};

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double env_budget() {
  const char* v = std::getenv(kBudgetEnv);
  if (!v || !*v) return kDefaultWorkBudget;
  char* end = nullptr;
  double b = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(b > 0))
    throw ValidationError(std::string(kBudgetEnv) + " must be a positive number, got '" + v + "'");
  return b;
}

// Residue tuple -> module index. The trivial module accepts any all-zero tuple.
std::size_t parse_element(const FiniteQuadraticModule& D, const std::string& s) {
  IntVec r = parse_int_vector(s);
  if (D.divisors().empty()) {
    for (i64 x : r)
      if (x != 0) throw ValidationError("discriminant group is trivial; element must be 0");
    return 0;
  }
  if (r.size() != D.divisors().size())
    throw ValidationError("element '" + s + "' needs " + std::to_string(D.divisors().size()) +
                          " residues");
  return D.index(r);
}

// "v" (constant) or "r1,r2=v;r1,r2=v".
std::map<std::size_t, double> parse_coeffs(const FiniteQuadraticModule& D, const std::string& s,
                                           const std::vector<std::size_t>& support) {
  std::map<std::size_t, double> out;
  if (s.empty()) return out;
  if (s.find('=') == std::string::npos) {
    double v = parse_rational(s).get_d();
    for (auto i : support) out[i] = v;
    return out;
  }
  for (const auto& item : split_on(s, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("expected 'residues=value' in '" + item + "'");
    out[parse_element(D, item.substr(0, eq))] = parse_rational(item.substr(eq + 1)).get_d();
  }
  return out;
}

SL2 parse_matrix(const std::string& s) {
  IntVec v = parse_int_vector(s);
  if (v.size() != 4) throw ValidationError("--matrix needs four entries a,b,c,d");
  SL2 M{v[0], v[1], v[2], v[3]};
  if (M.det() != 1) throw ValidationError("matrix " + M.str() + " is not in SL2(Z)");
  return M;
}

json lattice_json(const IntegralLattice& L) {
  Signature s = L.signature();
  return {{"name", L.name()}, {"rank", L.rank()}, {"signature", {s.plus, s.minus}},
          {"det", L.det().get_str()}};
}

json cmd_discriminant(const IntegralLattice& L) {
  auto DL = discriminant_form(L);
  json j = module_json(*DL.module);
  j["lattice"] = lattice_json(L);
  j["milgram"] = milgram_holds(*DL.module);
  return j;
}

json cmd_isotropic(const IntegralLattice& L, const Opts& o) {
  auto DL = discriminant_form(L);
  const auto& D = *DL.module;
  json elems = json::array();
  for (const auto& e : isotropic_elements(D))
    elems.push_back({{"element", D.element(e.index)}, {"order", e.order}});
  json j = {{"elements", elems}};
  if (o.bound >= 0) {
    json vecs = json::array();
    for (const auto& v : find_isotropic_vectors(L, o.bound, Exec::parallel, o.budget))
      vecs.push_back({{"z", v.z}, {"level", v.level}});
    j["vectors"] = vecs;
  }
  return j;
}

IsotropicCusp read_cusp(const IntegralLattice& L, const Opts& o) {
  if (o.z.empty() || o.zprime.empty()) throw ValidationError("--z and --zprime are required");
  return cusp_data(L, parse_int_vector(o.z), parse_rat_vector(o.zprime));
}

json cmd_cusp(const IntegralLattice& L, const Opts& o) {
  auto c = read_cusp(L, o);
  auto rep = verify_cusp(L, c);
  auto K = c.K();
  return {{"z", c.z},
          {"zprime", rat_vec_json(c.z_prime)},
          {"N_z", c.level},
          {"zeta", c.zeta},
          {"zeta_K", rat_vec_json(c.zeta_K)},
          {"zeta_B", rat_json(c.zeta_B)},
          {"K_basis", int_mat_json(c.K_basis)},
          {"K_gram", int_mat_json(c.K_gram)},
          {"K", lattice_json(K)},
          {"K_discriminant", module_json(*discriminant_form(K).module)},
          {"checks",
           {{"surjective", rep.surjective},
            {"index_formula", rep.index_formula},
            {"gram_two_ways", rep.gram_two_ways},
            {"generators_fixed", rep.generators_fixed}}}};
}

json cmd_weil(const IntegralLattice& L, const Opts& o) {
  auto DL = discriminant_form(L);
  if (o.gen.empty() == o.matrix.empty())
    throw ValidationError("give exactly one of --gen or --matrix");
  json j;
  if (!o.gen.empty()) {
    Generator g;
    if (o.gen == "T") g = Generator::T;
    else if (o.gen == "S") g = Generator::S;
    else if (o.gen == "Z") g = Generator::Z;
    else throw ValidationError("--gen must be T, S or Z");
    j = weil_json(rho_generator(DL.module, g));
    return j;
  }
  SL2 M = parse_matrix(o.matrix);
  if (o.method == "word") j = weil_json(rho_word(DL.module, M));
  else if (o.method == "shintani") j = weil_json(rho_shintani(L, DL, M, Exec::parallel, o.budget));
  else throw ValidationError("--method must be word or shintani");
  j["matrix"] = M.str();
  j["word"] = word_string(standard_word(M).word);
  return j;
}

json cmd_invariants(const IntegralLattice& L) {
  auto DL = discriminant_form(L);
  auto inv = invariants_basis(DL.module);
  json basis = json::array();
  for (const auto& v : inv.basis) {
    json row = json::array();
    for (const auto& x : v) row.push_back(exact_json(x));
    basis.push_back(row);
  }
  return {{"dim", inv.dimension}, {"basis", basis}};
}

json cmd_boundary(const IntegralLattice& L, const Opts& o) {
  if (o.d.empty()) throw ValidationError("--d is required");
  if (o.prec < 0) throw ValidationError("--prec must be nonnegative");
  if (static_cast<double>(o.prec) > o.budget)
    throw BudgetExceeded("q-expansion precision exceeds work budget", static_cast<double>(o.prec),
                         o.budget);
  auto DL = discriminant_form(L);
  auto cusp = read_cusp(L, o);
  auto line = boundary_line(L, cusp, parse_int_vector(o.d));
  std::size_t beta = parse_element(*DL.module, o.beta);
  auto dec = decompose_beta(L, DL, cusp, line, beta);
  json j = qexp_json(boundary_qexpansion(L, cusp, line, beta, o.kappa, o.prec));
  j["N_z"] = cusp.level;
  j["N_d"] = line.level;
  j["kappa"] = o.kappa;
  j["decomposition"] = {{"exists", dec.exists}, {"c_beta", dec.c_beta}, {"b_beta", dec.b_beta}};
  return j;
}

json cmd_singular(const IntegralLattice& L, const Opts& o) {
  std::optional<SplitWitness> hint;
  if (!o.split.empty()) {
    auto parts = split_on(o.split, ';');
    if (parts.size() != 4) throw ValidationError("--split needs four vectors 'e1;f1;e2;f2'");
    hint = SplitWitness{parse_int_vector(parts[0]), parse_int_vector(parts[1]),
                        parse_int_vector(parts[2]), parse_int_vector(parts[3])};
  }
  auto r = singular_dim(L, hint, o.budget);
  json j = {{"signature", {r.signature.plus, r.signature.minus}},
            {"is_2l", r.is_2l},
            {"l", r.l},
            {"kappa", r.kappa ? json(*r.kappa) : json(nullptr)},
            {"dim_inv", r.dim_inv},
            {"splits_two_U", r.splits_two_U},
            {"dim_boundary_eisenstein",
             r.dim_boundary_eisenstein ? json(*r.dim_boundary_eisenstein) : json(nullptr)},
            {"flags", r.flags}};
  if (r.witness)
    j["witness"] = {{"e1", r.witness->e1}, {"f1", r.witness->f1}, {"e2", r.witness->e2},
                    {"f2", r.witness->f2}};
  else
    j["witness"] = nullptr;
  return j;
}

json cmd_adjoint(const IntegralLattice& L, const Opts& o) {
  auto DL = discriminant_form(L);
  const auto& D = *DL.module;
  int l = o.l;
  if (l < 0) {
    if (L.signature().plus != 2) throw ValidationError("--l is required unless signature is (2, l)");
    l = L.signature().minus;
  }
  std::vector<std::size_t> iso;
  for (const auto& e : isotropic_elements(D)) iso.push_back(e.index);
  auto a = parse_coeffs(D, o.a, iso);
  auto C = parse_coeffs(D, o.C, iso);
  auto v = assemble_adjoint_vector(D, a, C, l);
  json elems = json::array();
  for (std::size_t i = 0; i < D.size(); ++i) elems.push_back(D.element(i));
  return {{"l", l}, {"kappa", l / 2 - 1}, {"elements", elems}, {"approx", v}};
}

json cmd_check(const Opts& o) {
  auto r = run_check_suite(o.suite, o.seed);
  json cases = json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"label", c.label}, {"err", c.err}, {"tol", c.tol}, {"pass", c.pass}});
  return {{"suite", r.suite}, {"cases", cases}, {"max_err", r.max_err}, {"pass", r.pass}};
}

json cmd_theta(const IntegralLattice& L, const Opts& o) {
  if (!L.is_definite()) throw ValidationError("theta needs a definite lattice");
  RatVec coset = o.coset.empty() ? RatVec(L.rank(), mpq_class(0)) : parse_rat_vector(o.coset);
  if (static_cast<int>(coset.size()) != L.rank())
    throw ValidationError("--coset has the wrong length");
  mpq_class prec = parse_rational(o.prec_rat);
  if (prec < 0) throw ValidationError("--prec must be nonnegative");
  json coeffs = json::object();
  for (const auto& [n, r] : theta_coefficients(L, coset, prec)) coeffs[to_string(n)] = r;
  return {{"coset", rat_vec_json(coset)}, {"prec", to_string(prec)}, {"coeffs", coeffs}};
}

json error_doc(const std::string& msg) { return {{"error", msg}}; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Opts o;
  CLI::App app{"Discriminant forms, Weil representations and boundary Eisenstein data"};
  app.name("weillift");
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<double> budget_flag;
  app.add_option("--seed", o.seed, "sample generator seed");
  app.add_option("--work-budget", budget_flag, "cap on enumeration size");

  auto with_lattice = [&](CLI::App* s) {
    s->add_option("--lattice", o.lattice, "lattice JSON file")->required();
    return s;
  };
  auto* disc = with_lattice(app.add_subcommand("discriminant", "discriminant form L'/L"));
  auto* iso = with_lattice(app.add_subcommand("isotropic", "isotropic elements and vectors"));
  iso->add_option("--bound", o.bound, "also list primitive isotropic vectors of L");
  auto* cusp = with_lattice(app.add_subcommand("cusp", "data attached to an isotropic vector"));
  cusp->add_option("--z", o.z)->required();
  cusp->add_option("--zprime", o.zprime)->required();
  auto* weil = with_lattice(app.add_subcommand("weil", "Weil representation matrix"));
  weil->add_option("--gen", o.gen, "T, S or Z");
  weil->add_option("--matrix", o.matrix, "a,b,c,d");
  weil->add_option("--method", o.method, "word or shintani");
  auto* inv = with_lattice(app.add_subcommand("invariants", "invariants of the Weil representation"));
  auto* bq = with_lattice(app.add_subcommand("boundary-qexp", "boundary q-expansion"));
  bq->add_option("--z", o.z)->required();
  bq->add_option("--zprime", o.zprime)->required();
  bq->add_option("--d", o.d)->required();
  bq->add_option("--beta", o.beta, "residues of beta in L'/L");
  bq->add_option("--kappa", o.kappa);
  bq->add_option("--prec", o.prec);
  auto* sd = with_lattice(app.add_subcommand("singular-dim", "dimension report"));
  sd->add_option("--split", o.split, "e1;f1;e2;f2");
  auto* adj = with_lattice(app.add_subcommand("adjoint", "adjoint vector from isotropic data"));
  adj->add_option("--l", o.l);
  adj->add_option("--a", o.a, "constant or 'residues=value;...'");
  adj->add_option("--C", o.C, "constant or 'residues=value;...'");
  auto* chk = app.add_subcommand("check", "numeric identity suites");
  chk->add_option("--suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"bessel", "laplacian", "integral", "siegel", "metric"}));
  chk->add_option("--seed", o.seed);
  auto* th = with_lattice(app.add_subcommand("theta", "theta coefficients of a definite lattice"));
  th->add_option("--coset", o.coset);
  th->add_option("--prec", o.prec_rat);

  std::vector<std::string> argv_s{"weillift"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    out << error_doc(e.what()).dump(2) << "\n";
    err << "weillift: " << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    o.budget = budget_flag ? *budget_flag : env_budget();
    if (!(o.budget > 0)) throw ValidationError("--work-budget must be positive");

    json flags = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help" || name == "lattice" || name == "seed") continue;
      flags[name] = opt->as<std::string>();
    }
    json config = {{"subcommand", sub->get_name()},
                   {"lattice", o.lattice.empty() ? json(nullptr) : json(o.lattice)},
                   {"seed", o.seed},
                   {"work_budget", o.budget},
                   {"flags", flags}};

    json result;
    if (sub == chk) {
      result = cmd_check(o);
    } else {
      IntegralLattice L = load_lattice(o.lattice);
      if (sub == disc) result = cmd_discriminant(L);
      else if (sub == iso) result = cmd_isotropic(L, o);
      else if (sub == cusp) result = cmd_cusp(L, o);
      else if (sub == weil) result = cmd_weil(L, o);
      else if (sub == inv) result = cmd_invariants(L);
      else if (sub == bq) result = cmd_boundary(L, o);
      else if (sub == sd) result = cmd_singular(L, o);
      else if (sub == adj) result = cmd_adjoint(L, o);
      else if (sub == th) result = cmd_theta(L, o);
    }
    result["config"] = config;
    out << result.dump(2) << "\n";
    return 0;
  } catch (const ValidationError& e) {
    out << error_doc(e.what()).dump(2) << "\n";
    err << "weillift: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    json j = error_doc(e.what());
    j["required"] = e.required();
    j["budget"] = e.budget();
    out << j.dump(2) << "\n";
    err << "weillift: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    out << error_doc(std::string("internal error: ") + e.what()).dump(2) << "\n";
    err << "weillift: internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace weillift::cli
