#include "weillift/eisenstein.hpp"

#include <cmath>
#include <numbers>
#include <omp.h>

#include "weillift/weil.hpp"

namespace weillift {

CycloNum twisted_divisor_sum(i64 m, i64 c, i64 N_lambda, i64 b, i64 N_z, int kappa) {
  if (m < 1) throw ValidationError("divisor sums need m >= 1");
  if (kappa < 1) throw ValidationError("kappa must be at least 1");
  if (N_lambda < 1 || N_z < 1) throw ValidationError("levels must be positive");
  // coefficient of e(k / N_z), accumulated exactly
  std::vector<mpq_class> per(N_z, 0);
  for (i64 n : divisors(m)) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(kappa - 1));
    const i64 q = m / n;
    if (mod(q - c, N_lambda) == 0) per[mod(n * b, N_z)] += p;
    // n -> -n: sgn(n) n^{kappa-1} = (-1)^kappa |n|^{kappa-1}, m/n -> -q, e(-nb/N_z)
    if (mod(-q - c, N_lambda) == 0) per[mod(-n * b, N_z)] += (kappa % 2 == 0) ? p : mpz_class(-p);
  }
  return CycloNum::from_coeffs(N_z, per).normalized();
}

CycloNum constant_term(i64 N, i64 b, int kappa) {
  if (N < 1) throw ValidationError("level must be positive");
  if (kappa < 2) throw ValidationError("constant terms need kappa >= 2");
  std::vector<mpq_class> per(N, 0);
  for (i64 j = 0; j < N; ++j) per[mod(-j * b, N)] += bernoulli_poly(kappa, mpq_class(j, N));
  mpz_class np;
  mpz_ui_pow_ui(np.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(kappa - 1));
  mpq_class f(np, kappa);
  f.canonicalize();
  if (kappa % 2 == 0) f = -f;
  return (CycloNum::from_coeffs(N, per) * f).normalized();
}

cld constant_term_numeric(i64 N, i64 b, int kappa) {
  const long double s = kappa;
  long double z = partial_zeta(s, b, N);
  long double w = partial_zeta(s, -b, N);
  long double zsum = z + ((kappa % 2 == 0) ? w : -w);
  // (-2 pi i)^kappa = (2 pi)^kappa * (-i)^kappa
  const long double tp = 2 * std::numbers::pi_v<long double>;
  cld mi_pow = 1;
  for (int k = 0; k < kappa; ++k) mi_pow *= cld(0, -1);
  long double mag = std::tgamma(s) * std::pow(static_cast<long double>(N), s) / std::pow(tp, s);
  return cld(mag * zsum) / mi_pow;
}

CycloNum constant_term(const IntegralLattice& L, const IsotropicCusp& cusp, std::size_t beta,
                       int kappa) {
  DiscriminantForm DL = discriminant_form(L);
  RatVec zN = to_rat(cusp.z);
  for (auto& x : zN) x /= cusp.level;
  for (i64 b = 0; b < cusp.level; ++b) {
    RatVec v = zN;
    for (auto& x : v) x *= b;
    if (DL.reduce(L.gram(), v) == beta) return constant_term(cusp.level, b, kappa);
  }
  return CycloNum();
}

BoundaryLine boundary_line(const IntegralLattice& L, const IsotropicCusp& cusp, const IntVec& d) {
  if (static_cast<int>(d.size()) != L.rank())
    throw ValidationError("d must have length " + std::to_string(L.rank()));
  if (content(d) != 1) throw ValidationError("d is not primitive");
  if (L.norm(d) != 0) throw ValidationError("d is not isotropic");
  if (L.pair(d, cusp.z) != 0 || L.pair(to_rat(d), cusp.z_prime) != 0)
    throw ValidationError("d is not in K (must be orthogonal to z and z')");
  BoundaryLine bl;
  bl.d = d;
  i64 g = 0;
  for (const auto& k : cusp.K_basis) g = gcd(g, L.pair(d, k));
  bl.level = g;
  bl.d_zeta = L.pair(d, cusp.zeta);
  return bl;
}

std::size_t boundary_class(const IntegralLattice& L, const DiscriminantForm& DL,
                           const IsotropicCusp& cusp, const BoundaryLine& d, i64 c, i64 b) {
  const i64 Nz = cusp.level, Nd = d.level;
  mpq_class zc = mpq_class(-c * d.d_zeta, Nd * Nz) + mpq_class(b, Nz);
  zc.canonicalize();
  mpq_class dc(c, Nd);
  dc.canonicalize();
  RatVec v(d.d.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = dc * d.d[i] + zc * cusp.z[i];
  return DL.reduce(L.gram(), v);
}

BoundaryDecomposition decompose_beta(const IntegralLattice& L, const DiscriminantForm& DL,
                                     const IsotropicCusp& cusp, const BoundaryLine& d,
                                     std::size_t beta) {
  BoundaryDecomposition out;
  for (i64 c = 0; c < d.level; ++c)
    for (i64 b = 0; b < cusp.level; ++b) {
      if (boundary_class(L, DL, cusp, d, c, b) != beta) continue;
      if (out.exists) throw std::logic_error("decompose_beta: decomposition is not unique");
      out = {true, c, b};
    }
  return out;
}

CycloNum QExpansion::coeff(i64 m) const {
  auto it = coeffs.find(m);
  return it == coeffs.end() ? CycloNum() : it->second;
}

QExpansion boundary_qexpansion(const IntegralLattice& L, const IsotropicCusp& cusp,
                               const BoundaryLine& d, std::size_t beta, int kappa, i64 prec,
                               Exec exec) {
  if (kappa < 2) throw ValidationError("kappa must be at least 2");
  if (prec < 0) throw ValidationError("precision must be non-negative");
  DiscriminantForm DL = discriminant_form(L);
  if (beta >= DL.module->size()) throw ValidationError("beta is not an element of L'/L");
  QExpansion q;
  q.N = d.level;
  q.prec = prec;
  BoundaryDecomposition dec = decompose_beta(L, DL, cusp, d, beta);
  if (!dec.exists) return q;

  const i64 Nz = cusp.level, Nd = d.level;
  std::vector<CycloNum> a(prec + 1);
  if (dec.c_beta == 0) a[0] = constant_term(Nz, dec.b_beta, kappa);
  auto coef = [&](i64 m) {
    CycloNum s = twisted_divisor_sum(m, dec.c_beta, Nd, dec.b_beta, Nz, kappa);
    if (s.is_zero()) return;
    // e(-m (d, zeta_K) / (N_z N_d))
    a[m] = (s * CycloNum::root_of_unity(-m * d.d_zeta, Nz * Nd)).normalized();
  };
  if (exec == Exec::serial) {
    for (i64 m = 1; m <= prec; ++m) coef(m);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (i64 m = 1; m <= prec; ++m) coef(m);
  }
  for (i64 m = 0; m <= prec; ++m)
    if (!a[m].is_zero()) q.coeffs.emplace(m, a[m]);
  return q;
}

std::map<i64, cld> eisenstein_projection_coeffs(i64 N, int kappa) {
  if (N < 1) throw ValidationError("order must be positive");
  if (kappa < 2) throw ValidationError("kappa must be at least 2");
  DirichletGroup G(N);
  std::vector<cld> inv_l(G.size());
  for (std::size_t j = 0; j < G.size(); ++j) inv_l[j] = 1.0L / dirichlet_l(G, j, kappa);
  const long double tp = 2 * std::numbers::pi_v<long double>;
  cld pre = 1;
  for (int k = 0; k < kappa; ++k) pre *= cld(0, -tp);  // (-2 pi i)^kappa
  pre /= 2.0L * static_cast<long double>(G.size()) * std::tgamma(static_cast<long double>(kappa)) *
         std::pow(static_cast<long double>(N), static_cast<long double>(kappa));
  std::map<i64, cld> out;
  for (i64 c : G.units()) {
    cld s = 0;
    for (std::size_t j = 0; j < G.size(); ++j) s += G.value(j, c) * inv_l[j];
    out[c] = pre * s;
  }
  return out;
}

std::vector<double> assemble_adjoint_vector(const FiniteQuadraticModule& D,
                                            const std::map<std::size_t, double>& a,
                                            const std::map<std::size_t, double>& C, int l) {
  if (l <= 2 || l % 2 != 0) throw ValidationError("l must be even and greater than 2");
  const int kappa = l / 2 - 1;
  const long double s = l - kappa;
  for (const auto& entry : C)
    if (entry.first >= D.size() || D.q_num(entry.first) != 0)
      throw ValidationError("C is supported outside the isotropic elements");
  std::vector<long double> v(D.size(), 0);
  for (auto [delta, ad] : a) {
    if (delta >= D.size()) throw ValidationError("index outside L'/L");
    if (ad == 0) continue;
    if (D.q_num(delta) != 0)
      throw ValidationError("a is supported on a non-isotropic element");
    auto it = C.find(delta);
    const double cd = it == C.end() ? 1.0 : it->second;
    const i64 Nd = D.order(delta);
    for (i64 k = 0; k < Nd; ++k) v[D.scale(delta, k)] += partial_zeta(s, k, Nd) * ad * cd;
  }
  const long double hl = l / 2.0L;
  const long double pre =
      std::tgamma(hl) / (2 * std::pow(2 * std::numbers::pi_v<long double>, hl));
  std::vector<double> out(D.size());
  for (std::size_t i = 0; i < D.size(); ++i) out[i] = static_cast<double>(pre * v[i]);
  return out;
}

// ---------------------------------------------------------------------------------------------

namespace {

bool is_hyperbolic_pair(const IntegralLattice& L, const IntVec& e, const IntVec& f) {
  return L.norm(e) == 0 && L.norm(f) == 0 && L.pair(e, f) == 1;
}

// e isotropic with (e, L) = Z; returns f in L with q(f) = 0 and (e, f) = 1.
IntVec hyperbolic_partner(const IntegralLattice& L, const IntVec& e) {
  IntVec ge = matvec(L.gram(), e);
  // f0 with (e, f0) = 1 from an extended-gcd fold
  IntVec f0(e.size(), 0);
  i64 g = 0;
  for (std::size_t i = 0; i < ge.size(); ++i) {
    if (ge[i] == 0) continue;
    if (g == 0) {
      g = ge[i] > 0 ? ge[i] : -ge[i];
      f0[i] = ge[i] > 0 ? 1 : -1;
      continue;
    }
    ExtGcd r = ext_gcd(g, ge[i]);
    for (std::size_t j = 0; j < i; ++j) f0[j] = checked_mul(f0[j], r.x);
    f0[i] = r.y;
    g = r.g;
  }
  const i64 q = L.norm(f0) / 2;
  for (std::size_t i = 0; i < f0.size(); ++i) f0[i] = checked_add(f0[i], -checked_mul(q, e[i]));
  return f0;
}

struct Split {
  IntVec e, f;
};

std::optional<Split> find_hyperbolic_pair(const IntegralLattice& L, double budget) {
  for (int bound = 1; bound <= 2; ++bound) {
    if (std::pow(2.0 * bound + 1, L.rank()) > budget) break;
    for (const auto& iv : find_isotropic_vectors(L, bound, Exec::parallel, budget))
      if (iv.level == 1) return Split{iv.z, hyperbolic_partner(L, iv.z)};
  }
  return std::nullopt;
}

// Basis (rows, L coordinates) of the orthogonal complement of <e, f>.
IntMat complement_basis(const IntegralLattice& L, const IntVec& e, const IntVec& f) {
  const int n = L.rank();
  IntMat rows;
  for (int i = 0; i < n; ++i) {
    IntVec x(n, 0);
    x[i] = 1;
    i64 xf = L.pair(x, f), xe = L.pair(x, e);
    for (int j = 0; j < n; ++j) x[j] -= xf * e[j] + xe * f[j];
    rows.push_back(x);
  }
  return hermite_rows(rows);
}

}  // namespace

SingularDimReport singular_dim(const IntegralLattice& L, const std::optional<SplitWitness>& hint,
                               double budget) {
  SingularDimReport r;
  r.signature = L.signature();
  r.l = r.signature.minus;
  r.is_2l = r.signature.plus == 2 && r.l >= 4 && r.l % 2 == 0;
  if (r.signature.plus != 2) r.flags.push_back("not (2,l)");
  else if (!r.is_2l) r.flags.push_back("l must be even and at least 4 for the dimension claim");
  if (r.signature.plus == 2 && r.l % 2 == 0 && r.l > 2) r.kappa = r.l / 2 - 1;

  DiscriminantForm DL = discriminant_form(L);
  r.dim_inv = invariants_basis(DL.module).dimension;

  if (hint) {
    const auto& h = *hint;
    for (const auto* v : {&h.e1, &h.f1, &h.e2, &h.f2})
      if (static_cast<int>(v->size()) != L.rank())
        throw ValidationError("split vectors must have length " + std::to_string(L.rank()));
    bool ok = is_hyperbolic_pair(L, h.e1, h.f1) && is_hyperbolic_pair(L, h.e2, h.f2);
    for (const auto* x : {&h.e1, &h.f1})
      for (const auto* y : {&h.e2, &h.f2})
        if (L.pair(*x, *y) != 0) ok = false;
    if (!ok) throw ValidationError("split vectors do not span U+U");
    r.splits_two_U = "yes";
    r.witness = h;
  } else if (L.rank() < 4 || r.signature.plus < 2 || r.signature.minus < 2) {
    r.splits_two_U = "no";
  } else {
    r.splits_two_U = "unknown";
    if (auto s1 = find_hyperbolic_pair(L, budget)) {
      IntMat B = complement_basis(L, s1->e, s1->f);
      IntMat g(B.size(), IntVec(B.size()));
      for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) g[i][j] = L.pair(B[i], B[j]);
      IntegralLattice M(g, "complement");
      if (M.signature().plus >= 1 && M.signature().minus >= 1) {
        if (auto s2 = find_hyperbolic_pair(M, budget)) {
          auto to_L = [&](const IntVec& y) {
            IntVec x(L.rank(), 0);
            for (std::size_t k = 0; k < y.size(); ++k)
              for (int i = 0; i < L.rank(); ++i) x[i] += y[k] * B[k][i];
            return x;
          };
          r.witness = SplitWitness{s1->e, s1->f, to_L(s2->e), to_L(s2->f)};
          r.splits_two_U = "yes";
        }
      }
    }
  }
  if (r.splits_two_U == "yes" && r.is_2l) r.dim_boundary_eisenstein = r.dim_inv;
  return r;
}

}  // namespace weillift
