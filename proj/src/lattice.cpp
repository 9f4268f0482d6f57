#include "weillift/lattice.hpp"

#include <Eigen/Dense>
#include <fstream>
#include <regex>
#include <sstream>

namespace weillift {

IntegralLattice::IntegralLattice(IntMat gram, std::string name)
    : gram_(std::move(gram)), name_(std::move(name)) {
  const std::size_t n = gram_.size();
  if (n == 0) throw ValidationError("gram matrix is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n) throw ValidationError("gram matrix is not square");
    if (gram_[i][i] % 2 != 0)
      throw ValidationError("lattice is not even: diagonal entry " + std::to_string(i) + " is " +
                            std::to_string(gram_[i][i]));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_[i][j] != gram_[j][i]) throw ValidationError("gram matrix is not symmetric");
  det_ = determinant(gram_);
  if (det_ == 0) throw ValidationError("gram matrix is singular");

  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = static_cast<double>(gram_[i][j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (es.eigenvalues()(i) > 0)
      ++sig_.plus;
    else
      ++sig_.minus;
  }
  // sign of det must match parity of b_minus
  if ((sig_.minus % 2 == 1) != (det_ < 0))
    throw ValidationError("gram matrix is numerically ill-conditioned; signature undetermined");
}

i64 IntegralLattice::pair(const IntVec& a, const IntVec& b) const { return dot(a, matvec(gram_, b)); }

mpq_class IntegralLattice::pair(const RatVec& a, const RatVec& b) const {
  return dot(a, matvec(gram_, b));
}

IntegralLattice IntegralLattice::hyperbolic(i64 n) {
  return IntegralLattice({{0, n}, {n, 0}}, n == 1 ? "U" : "U(" + std::to_string(n) + ")");
}

IntegralLattice IntegralLattice::a1() { return IntegralLattice({{2}}, "A1"); }

IntegralLattice IntegralLattice::a2() { return IntegralLattice({{2, -1}, {-1, 2}}, "A2"); }

IntegralLattice IntegralLattice::e8() {
  // Cartan matrix, Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to 4.
  IntMat g(8, IntVec(8, 0));
  for (int i = 0; i < 8; ++i) g[i][i] = 2;
  const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (auto& e : edges) g[e[0]][e[1]] = g[e[1]][e[0]] = -1;
  return IntegralLattice(g, "E8");
}

IntegralLattice IntegralLattice::scaled(i64 n) const {
  IntMat g = gram_;
  for (auto& row : g)
    for (auto& x : row) x = checked_mul(x, n);
  return IntegralLattice(g, name_ + "(" + std::to_string(n) + ")");
}

IntegralLattice IntegralLattice::direct_sum(const std::vector<IntegralLattice>& parts) {
  std::size_t n = 0;
  std::string name;
  for (const auto& p : parts) {
    n += p.rank();
    if (!name.empty()) name += "+";
    name += p.name();
  }
  IntMat g(n, IntVec(n, 0));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < p.rank(); ++i)
      for (int j = 0; j < p.rank(); ++j) g[off + i][off + j] = p.gram()[i][j];
    off += p.rank();
  }
  return IntegralLattice(g, name);
}

IntegralLattice named_lattice(const std::string& spec) {
  static const std::regex re(R"(^\s*(U|A1|A2|E8)\s*(?:\(\s*(-?\d+)\s*\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw ValidationError("unknown lattice primitive '" + spec + "'");
  i64 scale = m[2].matched ? std::stoll(m[2].str()) : 1;
  if (scale == 0) throw ValidationError("lattice scale must be nonzero");
  const std::string base = m[1].str();
  if (base == "U") {
    if (scale == 1) return IntegralLattice::hyperbolic(1);
    return IntegralLattice({{0, scale}, {scale, 0}}, spec);
  }
  IntegralLattice l = base == "A1" ? IntegralLattice::a1()
                      : base == "A2" ? IntegralLattice::a2()
                                     : IntegralLattice::e8();
  if (scale == 1) return l;
  IntMat g = l.gram();
  for (auto& row : g)
    for (auto& x : row) x *= scale;
  return IntegralLattice(g, base + "(" + std::to_string(scale) + ")");
}

IntegralLattice lattice_from_json(const nlohmann::json& j) {
  if (j.is_string()) return named_lattice(j.get<std::string>());
  if (!j.is_object()) throw ValidationError("lattice must be a JSON object or primitive name");
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  if (j.contains("gram")) {
    const auto& g = j["gram"];
    if (!g.is_array()) throw ValidationError("\"gram\" must be an array of integer rows");
    IntMat m;
    for (const auto& row : g) {
      if (!row.is_array()) throw ValidationError("\"gram\" must be an array of integer rows");
      IntVec r;
      for (const auto& x : row) {
        if (!x.is_number_integer()) throw ValidationError("gram entries must be integers");
        r.push_back(x.get<i64>());
      }
      m.push_back(r);
    }
    return IntegralLattice(m, name);
  }
  if (j.contains("sum")) {
    const auto& s = j["sum"];
    if (!s.is_array() || s.empty()) throw ValidationError("\"sum\" must be a non-empty array");
    std::vector<IntegralLattice> parts;
    for (const auto& p : s) parts.push_back(lattice_from_json(p));
    IntegralLattice l = IntegralLattice::direct_sum(parts);
    return name.empty() ? l : IntegralLattice(l.gram(), name);
  }
  throw ValidationError("lattice object needs \"gram\" or \"sum\"");
}

IntegralLattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open lattice file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("lattice file '" + path + "' is not valid JSON: " + e.what());
  }
  return lattice_from_json(j);
}

namespace {

std::vector<std::string> split_tokens(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',' || c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  std::istringstream in(t);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

RatVec parse_rat_vector(const std::string& s) {
  RatVec v;
  for (const auto& tok : split_tokens(s)) v.push_back(parse_rational(tok));
  if (v.empty()) throw ValidationError("empty coordinate vector");
  return v;
}

IntVec parse_int_vector(const std::string& s) {
  IntVec v;
  for (const auto& r : parse_rat_vector(s)) {
    if (r.get_den() != 1) throw ValidationError("expected integer coordinates in '" + s + "'");
    v.push_back(r.get_num().get_si());
  }
  return v;
}

}  // namespace weillift
