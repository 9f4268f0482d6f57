#include "weillift/weil.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <omp.h>

namespace weillift {

std::string SL2::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

std::string word_string(const Word& w) {
  std::string s;
  for (const auto& l : w) {
    if (l.g == Generator::T && l.power == 0) continue;
    if (!s.empty()) s += ' ';
    switch (l.g) {
      case Generator::T:
        s += l.power == 1 ? "T" : "T^" + std::to_string(l.power);
        break;
      case Generator::S: s += "S"; break;
      case Generator::Z: s += "Z"; break;
    }
  }
  return s.empty() ? "I" : s;
}

// ---------------------------------------------------------------------------------------------

WeilMatrix::WeilMatrix(ModulePtr module, std::vector<CycloNum> entries, std::string label)
    : module_(std::move(module)), entries_(std::move(entries)), label_(std::move(label)) {
  if (entries_.size() != dim() * dim()) throw std::invalid_argument("WeilMatrix: wrong entry count");
}

WeilMatrix WeilMatrix::identity(ModulePtr module) {
  const std::size_t n = module->size();
  std::vector<CycloNum> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = CycloNum(1L);
  return WeilMatrix(std::move(module), std::move(e), "I");
}

WeilMatrix WeilMatrix::operator*(const WeilMatrix& o) const {
  const std::size_t n = dim();
  std::vector<CycloNum> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const CycloNum& x = at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!o.at(k, j).is_zero()) e[i * n + j] += x * o.at(k, j);
    }
  return WeilMatrix(module_, std::move(e), label_ + " * " + o.label_);
}

CycloVec WeilMatrix::apply(const CycloVec& v) const {
  const std::size_t n = dim();
  CycloVec r(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
  }
  return r;
}

CycloVec WeilMatrix::column(std::size_t gamma) const {
  CycloVec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = at(i, gamma);
  return c;
}

WeilMatrix WeilMatrix::adjoint() const {
  const std::size_t n = dim();
  std::vector<CycloNum> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[j * n + i] = at(i, j).conj();
  return WeilMatrix(module_, std::move(e), "(" + label_ + ")^*");
}

bool WeilMatrix::is_identity() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (at(i, j) != CycloNum(i == j ? 1L : 0L)) return false;
  return true;
}

bool WeilMatrix::is_unitary() const { return (*this * adjoint()).is_identity(); }

bool operator==(const WeilMatrix& x, const WeilMatrix& y) {
  if (x.dim() != y.dim()) return false;
  for (std::size_t i = 0; i < x.entries_.size(); ++i)
    if (x.entries_[i] != y.entries_[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------------------------

namespace {

// Exponent of zeta_M giving e(b(beta, gamma)).
i64 b_exp(const FiniteQuadraticModule& D, std::size_t x, std::size_t y, i64 M) {
  return D.b_num(x, y) * (M / D.qden());
}

i64 q_exp(const FiniteQuadraticModule& D, std::size_t x, i64 M) {
  return D.q_num(x) * (M / D.qden());
}

// e((b- - b+)/8) sqrt|D| / |D| at order M.
CycloNum s_prefactor(const FiniteQuadraticModule& D, i64 M) {
  const i64 n = static_cast<i64>(D.size());
  Signature s = D.signature();
  CycloNum p = CycloNum::zeta(8, mod(s.minus - s.plus, 8)) * CycloNum::sqrt_nat(n);
  p *= mpq_class(1, n);
  return p.lift(M);
}

CycloNum z_factor(const FiniteQuadraticModule& D, i64 M) {
  Signature s = D.signature();
  return CycloNum::zeta(M, mod(s.minus - s.plus, 4) * (M / 4));
}

using Rows = std::vector<CycloNum>;  // row-major |D| x |D|

void left_T(const FiniteQuadraticModule& D, i64 M, i64 power, Rows& R) {
  const std::size_t n = D.size();
  for (std::size_t b = 0; b < n; ++b) {
    i64 k = mod(checked_mul(power, q_exp(D, b, M)), M);
    if (k == 0) continue;
    for (std::size_t g = 0; g < n; ++g)
      if (!R[b * n + g].is_zero()) R[b * n + g] = R[b * n + g].times_root(k);
  }
}

void left_S(const FiniteQuadraticModule& D, i64 M, const CycloNum& p, Rows& R) {
  const std::size_t n = D.size();
  Rows out(n * n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t g = 0; g < n; ++g) {
      CycloNum s;
      for (std::size_t d = 0; d < n; ++d) {
        const CycloNum& x = R[d * n + g];
        if (x.is_zero()) continue;
        s += x.times_root(mod(-b_exp(D, b, d, M), M));
      }
      if (!s.is_zero()) out[b * n + g] = s * p;
    }
  R = std::move(out);
}

void left_Z(const FiniteQuadraticModule& D, const CycloNum& zf, Rows& R) {
  const std::size_t n = D.size();
  Rows out(n * n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t g = 0; g < n; ++g)
      if (!R[b * n + g].is_zero()) out[D.neg(b) * n + g] = R[b * n + g] * zf;
  R = std::move(out);
}

Rows identity_rows(std::size_t n, i64 M) {
  Rows r(n * n);
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = CycloNum(mpq_class(1), M);
  return r;
}

}  // namespace

WeilMatrix rho_generator(const ModulePtr& D, Generator g) {
  return rho_letters(D, {{g, 1}});
}

WeilMatrix rho_letters(const ModulePtr& D, const Word& w) {
  const i64 M = D->working_order();
  const std::size_t n = D->size();
  const CycloNum p = s_prefactor(*D, M), zf = z_factor(*D, M);
  Rows R = identity_rows(n, M);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    switch (it->g) {
      case Generator::T: left_T(*D, M, it->power, R); break;
      case Generator::S:
        for (i64 k = 0; k < it->power; ++k) left_S(*D, M, p, R);
        break;
      case Generator::Z:
        for (i64 k = 0; k < it->power; ++k) left_Z(*D, zf, R);
        break;
    }
  }
  return WeilMatrix(D, std::move(R), word_string(w));
}

LiftedWord standard_word(const SL2& M) {
  if (M.det() != 1) throw ValidationError("matrix " + M.str() + " has determinant " +
                                          std::to_string(M.det()) + ", expected 1");
  LiftedWord out;
  SL2 A = M;
  while (A.c != 0) {
    i64 q = A.a / A.c;
    if (A.a % A.c != 0 && ((A.a < 0) != (A.c < 0))) --q;  // floor
    out.word.push_back({Generator::T, q});
    A = SL2{1, -q, 0, 1} * A;
    out.word.push_back({Generator::S, 1});
    A = SL2{0, 1, -1, 0} * A;
  }
  if (A.a == -1) {
    out.word.push_back({Generator::Z, 1});
    A = SL2{-A.a, -A.b, -A.c, -A.d};
  }
  out.word.push_back({Generator::T, A.b});

  // Follow the metaplectic branch of the word at a sample point and compare it with the
  // principal root sqrt(c tau + d).
  using C = std::complex<double>;
  const C tau0(0.3, 1.1);
  C tau = tau0, phi = 1;
  SL2 acc{1, 0, 0, 1};
  for (auto it = out.word.rbegin(); it != out.word.rend(); ++it) {
    switch (it->g) {
      case Generator::T:
        tau += static_cast<double>(it->power);
        acc = SL2{1, it->power, 0, 1} * acc;
        break;
      case Generator::S:
        phi *= std::sqrt(tau);
        tau = -1.0 / tau;
        acc = kS * acc;
        break;
      case Generator::Z:
        phi *= C(0, 1);
        acc = kZ * acc;
        break;
    }
  }
  if (!(acc == M)) throw std::logic_error("standard_word: product mismatch for " + M.str());
  C target = std::sqrt(static_cast<double>(M.c) * tau0 + static_cast<double>(M.d));
  out.flip_sign = std::abs(phi - target) > std::abs(phi + target);
  return out;
}

WeilMatrix rho_word(const ModulePtr& D, const SL2& M) {
  LiftedWord lw = standard_word(M);
  WeilMatrix R = rho_letters(D, lw.word);
  Signature s = D->signature();
  if (lw.flip_sign && mod(s.minus - s.plus, 2) == 1) {
    for (std::size_t i = 0; i < R.dim(); ++i)
      for (std::size_t j = 0; j < R.dim(); ++j) R.at(i, j) = -R.at(i, j);
  }
  R.set_label(word_string(lw.word));
  return R;
}

// ---------------------------------------------------------------------------------------------

namespace {

void check_budget(const IntegralLattice& L, i64 c, double budget) {
  double need = std::pow(std::fabs(static_cast<double>(c)), L.rank());
  if (need > budget)
    throw BudgetExceeded("Shintani sum needs |c|^rank = " + std::to_string(need) +
                             " terms, budget is " + std::to_string(budget),
                         need, budget);
}

// Shared c = 0 branch: zeta_8^{(b- - b+)(1 - sgn d)} delta_{beta, a gamma} e(a b q(beta)).
WeilMatrix shintani_c0(const ModulePtr& D, const SL2& M) {
  const i64 W = D->working_order();
  const std::size_t n = D->size();
  Signature s = D->signature();
  CycloNum f = M.d > 0 ? CycloNum(mpq_class(1), W)
                       : CycloNum::zeta(8, mod(2 * (s.minus - s.plus), 8)).lift(W);
  std::vector<CycloNum> e(n * n);
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t b = D->scale(g, M.a);
    e[b * n + g] = f.times_root(mod(checked_mul(M.a * M.b, q_exp(*D, b, W)), W));
  }
  return WeilMatrix(D, std::move(e), M.str());
}

// zeta_8^{(b- - b+) sgn c} / (|c|^{n/2} sqrt|D|).
CycloNum shintani_prefactor(const IntegralLattice& L, const FiniteQuadraticModule& D, i64 c) {
  Signature s = D.signature();
  const i64 ac = c < 0 ? -c : c;
  i64 cn = 1;
  for (int i = 0; i < L.rank(); ++i) cn = checked_mul(cn, ac);
  const i64 N = checked_mul(cn, static_cast<i64>(D.size()));
  CycloNum p = CycloNum::sqrt_nat(N) * mpq_class(1, N);
  return p * CycloNum::zeta(8, mod((s.minus - s.plus) * (c > 0 ? 1 : -1), 8));
}

}  // namespace

WeilMatrix rho_shintani(const IntegralLattice& L, const SL2& M, Exec exec, double budget) {
  return rho_shintani(L, discriminant_form(L), M, exec, budget);
}

WeilMatrix rho_shintani(const IntegralLattice& L, const DiscriminantForm& DL, const SL2& M,
                        Exec exec, double budget) {
  if (M.det() != 1) throw ValidationError("matrix " + M.str() + " has determinant " +
                                          std::to_string(M.det()) + ", expected 1");
  const ModulePtr& D = DL.module;
  if (M.c == 0) return shintani_c0(D, M);
  check_budget(L, M.c, budget);

  const int rank = L.rank();
  const std::size_t n = D->size();
  const IntMat& G = L.gram();
  const i64 e = DL.exponent;
  const i64 ac = M.c < 0 ? -M.c : M.c;
  const i64 sgn = M.c < 0 ? -1 : 1;
  // Entries are e((a X.GX - 2 W.GX + d W.GW) / (2 c e^2)) with X = e(beta + r), W = e gamma.
  const i64 order = checked_mul(2 * ac, checked_mul(e, e));
  i64 terms = 1;
  for (int i = 0; i < rank; ++i) terms *= ac;

  std::vector<IntVec> w(n), gw(n);
  std::vector<i64> wgw(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = DL.rep_numerator(i);
    gw[i] = matvec(G, w[i]);
    wgw[i] = dot(w[i], gw[i]);
  }
  const CycloNum pre = shintani_prefactor(L, *D, M.c);
  std::vector<CycloNum> out(n * n);

  auto entry = [&](std::size_t b, std::size_t g) {
    std::vector<i64> counts(order, 0);
    IntVec r(rank, 0), x(rank);
    for (i64 t = 0; t < terms; ++t) {
      i64 idx = t;
      for (int i = rank - 1; i >= 0; --i) {
        r[i] = idx % ac;
        idx /= ac;
      }
      for (int i = 0; i < rank; ++i) x[i] = w[b][i] + e * r[i];
      i64 xgx = dot(x, matvec(G, x));
      i64 wgx = dot(gw[g], x);
      i64 num = checked_add(checked_add(checked_mul(M.a, xgx), -2 * wgx),
                            checked_mul(M.d, wgw[g]));
      counts[mod(sgn * num, order)] += 1;
    }
    CycloNum s = CycloNum::from_root_counts(order, counts);
    if (!s.is_zero()) out[b * n + g] = s * pre;
  };

  const i64 pairs = static_cast<i64>(n * n);
  if (exec == Exec::serial) {
    for (i64 k = 0; k < pairs; ++k) entry(k / n, k % n);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (i64 k = 0; k < pairs; ++k) entry(k / n, k % n);
  }
  return WeilMatrix(D, std::move(out), M.str());
}

WeilMatrix rho_shintani_reference(const IntegralLattice& L, const DiscriminantForm& DL,
                                  const SL2& M, double budget) {
  if (M.det() != 1) throw ValidationError("matrix " + M.str() + " has determinant " +
                                          std::to_string(M.det()) + ", expected 1");
  const ModulePtr& D = DL.module;
  if (M.c == 0) return shintani_c0(D, M);
  check_budget(L, M.c, budget);
  const int rank = L.rank();
  const std::size_t n = D->size();
  const i64 ac = M.c < 0 ? -M.c : M.c;
  Signature s = D->signature();

  // prefactor assembled from separate inverse square roots
  CycloNum pre = CycloNum::zeta(8, mod((s.minus - s.plus) * (M.c > 0 ? 1 : -1), 8));
  CycloNum rc = CycloNum::sqrt_nat(ac).inv();
  for (int i = 0; i < rank; ++i) pre *= rc;
  pre *= CycloNum::sqrt_nat(static_cast<i64>(n)).inv();

  std::vector<CycloNum> out(n * n);
  IntVec r(rank, 0);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t g = 0; g < n; ++g) {
      const RatVec beta = DL.rep(b), gamma = DL.rep(g);
      const mpq_class gg = L.pair(gamma, gamma);
      CycloNum sum;
      std::fill(r.begin(), r.end(), 0);
      while (true) {
        RatVec x = beta;
        for (int i = 0; i < rank; ++i) x[i] += r[i];
        mpq_class v = (M.a * L.pair(x, x) - 2 * L.pair(gamma, x) + M.d * gg) / (2 * M.c);
        v = mpq_mod1(v);
        sum += CycloNum::root_of_unity(v.get_num().get_si(), v.get_den().get_si());
        int i = rank - 1;
        while (i >= 0 && ++r[i] == ac) r[i--] = 0;
        if (i < 0) break;
      }
      out[b * n + g] = sum * pre;
    }
  return WeilMatrix(D, std::move(out), M.str());
}

// ---------------------------------------------------------------------------------------------

bool CompatSides::equal() const {
  if (lhs.size() != rhs.size()) return false;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] != rhs[i]) return false;
  return true;
}

CompatSides rho_K_compat_sides(const IntegralLattice& L, const IsotropicCusp& cusp, const SL2& M,
                               std::size_t gamma, i64 n, double budget) {
  IntegralLattice K = cusp.K();
  DiscriminantForm DL = discriminant_form(L), DK = discriminant_form(K);
  if (gamma >= DK.module->size()) throw ValidationError("gamma is not an element of K'/K");
  const FiniteQuadraticModule& ML = *DL.module;
  const i64 N = cusp.level;
  const IntMat& G = L.gram();

  WeilMatrix rL = rho_shintani(L, DL, M, Exec::parallel, budget);
  WeilMatrix rK = rho_shintani(K, DK, M, Exec::parallel, budget);

  auto lift = [&](std::size_t k) {
    return DL.reduce(G, lift_from_K(L, cusp, cusp.from_K_coords(DK.rep(k))));
  };
  RatVec zN = to_rat(cusp.z);
  for (auto& x : zN) x /= N;
  auto class_of = [&](const mpq_class& m_over, const mpq_class& zp_coef) {
    RatVec v(zN.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = m_over * zN[i] + zp_coef * cusp.z_prime[i];
    return DL.reduce(G, v);
  };

  CompatSides out;
  CycloVec u(ML.size());
  const std::size_t g0 = lift(gamma);
  for (i64 m = 0; m < N; ++m)
    u[ML.add(g0, class_of(m, 0))] += CycloNum::root_of_unity(-m * n, N);
  out.lhs = rL.apply(u);

  const mpq_class qzp = L.pair(cusp.z_prime, cusp.z_prime) / 2;
  const CycloVec w = rK.column(gamma);
  CycloVec t(ML.size());
  for (i64 m = 0; m < N; ++m) {
    mpq_class ph = mpq_class(-M.a * m * n, N) + qzp * M.a * M.c * n * n;
    ph = mpq_mod1(ph);
    t[class_of(m, -n * M.c)] +=
        CycloNum::root_of_unity(ph.get_num().get_si(), ph.get_den().get_si());
  }
  out.rhs.assign(ML.size(), CycloNum());
  for (std::size_t b = 0; b < w.size(); ++b) {
    if (w[b].is_zero()) continue;
    const std::size_t lb = lift(b);
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!t[i].is_zero()) out.rhs[ML.add(lb, i)] += w[b] * t[i];
  }
  return out;
}

bool rho_K_compat_check(const IntegralLattice& L, const IsotropicCusp& cusp, const SL2& M,
                        std::size_t gamma, i64 n, double budget) {
  return rho_K_compat_sides(L, cusp, M, gamma, n, budget).equal();
}

// ---------------------------------------------------------------------------------------------

InvariantBasis invariants_basis(const ModulePtr& Dp) {
  const FiniteQuadraticModule& D = *Dp;
  const std::size_t n = D.size();
  const i64 M = D.working_order();

  // T-block: a row e(q(gamma)) - 1 != 0 has a single entry, so it pivots on its own column
  // and forces v_gamma = 0. What remains is the S-block on the isotropic columns.
  std::vector<std::size_t> cols;
  for (std::size_t g = 0; g < n; ++g)
    if (D.q_num(g) == 0) cols.push_back(g);
  const std::size_t k = cols.size();

  WeilMatrix S = rho_generator(Dp, Generator::S);
  std::vector<std::vector<CycloNum>> a(n, std::vector<CycloNum>(k));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t j = 0; j < k; ++j) {
      a[b][j] = S.at(b, cols[j]);
      if (b == cols[j]) a[b][j] -= CycloNum(1L);
    }

  // Gauss-Jordan to reduced row echelon form
  std::vector<int> pivot_of(k, -1);
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < n; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    CycloNum inv = a[row][c].inv();
    for (std::size_t j = c; j < k; ++j)
      if (!a[row][j].is_zero()) a[row][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][c].is_zero()) continue;
      CycloNum f = a[i][c];
      for (std::size_t j = c; j < k; ++j)
        if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
    }
    pivot_of[c] = static_cast<int>(row);
    ++row;
  }

  InvariantBasis out;
  const CycloNum zf = z_factor(D, M);
  for (std::size_t f = 0; f < k; ++f) {
    if (pivot_of[f] >= 0) continue;
    CycloVec v(n, CycloNum(mpq_class(0), M));
    v[cols[f]] = CycloNum(mpq_class(1), M);
    for (std::size_t c = 0; c < k; ++c)
      if (pivot_of[c] >= 0) v[cols[c]] = -a[pivot_of[c]][f];
    out.basis.push_back(std::move(v));
  }
  out.dimension = out.basis.size();

  // consequences asserted: S-, T- and Z-invariance, isotropic support
  for (const auto& v : out.basis) {
    if (S.apply(v) != v) throw std::logic_error("invariants_basis: vector not S-invariant");
    for (std::size_t g = 0; g < n; ++g) {
      if (v[g].is_zero()) continue;
      if (D.q_num(g) != 0) throw std::logic_error("invariants_basis: non-isotropic support");
      if (v[D.neg(g)] * zf != v[g]) throw std::logic_error("invariants_basis: not Z-invariant");
    }
  }
  return out;
}

}  // namespace weillift
