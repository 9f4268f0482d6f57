#include "weillift/theta.hpp"

#include <cmath>
#include <omp.h>

namespace weillift {

namespace {

// Q(y) = sum_i d_i (y_i + sum_{j>i} mu[i][j] y_j)^2, from an exact LDL^T of the Gram matrix.
struct Decomposition {
  std::vector<double> d;
  std::vector<std::vector<double>> mu;
};

Decomposition ldl(const IntMat& a) {
  const std::size_t n = a.size();
  std::vector<mpq_class> dq(n);
  RatMat l(n, RatVec(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    mpq_class s = a[j][j];
    for (std::size_t k = 0; k < j; ++k) s -= l[j][k] * l[j][k] * dq[k];
    dq[j] = s;
    if (dq[j] <= 0) throw ValidationError("theta series needs a definite lattice");
    l[j][j] = 1;
    for (std::size_t i = j + 1; i < n; ++i) {
      mpq_class t = a[i][j];
      for (std::size_t k = 0; k < j; ++k) t -= l[i][k] * l[j][k] * dq[k];
      l[i][j] = t / dq[j];
    }
  }
  Decomposition out;
  out.d.resize(n);
  out.mu.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    // round the pivot down so the radius below is an over-estimate
    out.d[i] = std::nextafter(dq[i].get_d(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) out.mu[i][j] = l[j][i].get_d();
  }
  return out;
}

struct Enumerator {
  const IntMat& A;           // positive definite form
  const Decomposition& dec;
  const std::vector<double>& gamma;
  const IntVec& gnum;        // den * gamma
  i64 den;
  double bound;              // on (y, y)_A
  i64 exact_bound;           // on den^2 (y, y)_A
  std::map<i64, i64>& counts;

  void leaf(const IntVec& x) {
    const std::size_t n = x.size();
    IntVec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = checked_add(checked_mul(den, x[i]), gnum[i]);
    i64 v = dot(y, matvec(A, y));
    if (v <= exact_bound) counts[v] += 1;
  }

  void recurse(int i, IntVec& x, std::vector<double>& y, double partial) {
    const int n = static_cast<int>(x.size());
    double c = 0;
    for (int j = i + 1; j < n; ++j) c -= dec.mu[i][j] * y[j];
    double slack = bound - partial;
    if (slack < 0) slack = 0;
    double r = std::sqrt(slack / dec.d[i]) * (1 + 1e-12) + 1e-9;
    i64 lo = static_cast<i64>(std::ceil(c - r - gamma[i]));
    i64 hi = static_cast<i64>(std::floor(c + r - gamma[i]));
    for (i64 xi = lo; xi <= hi; ++xi) {
      x[i] = xi;
      y[i] = static_cast<double>(xi) + gamma[i];
      double t = y[i] - c;
      double p = partial + dec.d[i] * t * t;
      if (i == 0)
        leaf(x);
      else
        recurse(i - 1, x, y, p);
    }
  }
};

}  // namespace

std::map<mpq_class, i64> theta_coefficients(const IntegralLattice& D, const RatVec& coset,
                                            const mpq_class& prec, Exec exec) {
  if (!D.is_definite()) throw ValidationError("theta series needs a definite lattice");
  const int n = D.rank();
  if (static_cast<int>(coset.size()) != n)
    throw ValidationError("coset vector must have length " + std::to_string(n));
  if (prec < 0) throw ValidationError("precision must be non-negative");
  IntMat A = D.gram();
  if (D.signature().plus == 0)
    for (auto& row : A)
      for (auto& x : row) x = -x;

  mpz_class denz = 1;
  for (const auto& c : coset) mpz_lcm(denz.get_mpz_t(), denz.get_mpz_t(), c.get_den_mpz_t());
  const i64 den = denz.get_si();
  IntVec gnum(n);
  std::vector<double> gamma(n);
  for (int i = 0; i < n; ++i) {
    mpq_class t = coset[i] * den;
    gnum[i] = t.get_num().get_si();
    gamma[i] = coset[i].get_d();
  }
  // |q(y)| <= prec  <=>  (y, y)_A <= 2 prec  <=>  den^2 (y, y)_A <= 2 prec den^2
  mpq_class eb = 2 * prec * den * den;
  mpz_class ebf;
  mpz_fdiv_q(ebf.get_mpz_t(), eb.get_num_mpz_t(), eb.get_den_mpz_t());
  const i64 exact_bound = ebf.get_si();
  const double bound = mpq_class(2 * prec).get_d() * (1 + 1e-9) + 1e-9;

  Decomposition dec = ldl(A);
  std::map<i64, i64> counts;

  // split the outermost coordinate into independent ranges
  const int top = n - 1;
  double r = std::sqrt(bound / dec.d[top]) * (1 + 1e-12) + 1e-9;
  i64 lo = static_cast<i64>(std::ceil(-r - gamma[top]));
  i64 hi = static_cast<i64>(std::floor(r - gamma[top]));

  auto run_slice = [&](i64 xt, std::map<i64, i64>& local) {
    Enumerator e{A, dec, gamma, gnum, den, bound, exact_bound, local};
    IntVec x(n, 0);
    std::vector<double> y(n, 0.0);
    x[top] = xt;
    y[top] = static_cast<double>(xt) + gamma[top];
    double p = dec.d[top] * y[top] * y[top];
    if (top == 0)
      e.leaf(x);
    else
      e.recurse(top - 1, x, y, p);
  };

  if (exec == Exec::serial) {
    for (i64 xt = lo; xt <= hi; ++xt) run_slice(xt, counts);
  } else {
#pragma omp parallel
    {
      std::map<i64, i64> local;
#pragma omp for schedule(dynamic)
      for (i64 xt = lo; xt <= hi; ++xt) run_slice(xt, local);
#pragma omp critical
      for (auto [k, v] : local) counts[k] += v;
    }
  }

  std::map<mpq_class, i64> out;
  for (auto [k, v] : counts) {
    mpq_class key(k, 2 * den * den);
    key.canonicalize();
    out[key] = v;
  }
  return out;
}

}  // namespace weillift
