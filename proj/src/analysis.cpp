#include "weillift/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "weillift/numtheory.hpp"
#include "weillift/special.hpp"

namespace weillift {

double tube_q(const RealVec& Y) {
  double q = Y.at(0) * Y[0];
  for (std::size_t i = 1; i < Y.size(); ++i) q -= Y[i] * Y[i];
  return q;
}

void check_cone(const RealVec& Y) {
  if (Y.empty()) throw ValidationError("Y must be non-empty");
  if (!(Y[0] > 0) || !(tube_q(Y) > 0)) throw ValidationError("Y is not in the cone (need y1 > 0, q(Y) > 0)");
}

Metric hermitian_metric(const RealVec& Y) {
  check_cone(Y);
  const int l = static_cast<int>(Y.size());
  const double q = tube_q(Y);
  Metric m;
  m.h.resize(l, l);
  m.h_inv.resize(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      // first row and column carry a minus sign off the diagonal
      double sign = ((i == 0) != (j == 0)) ? -1.0 : 1.0;
      double diag = i == j ? (i == 0 ? -1.0 : 1.0) : 0.0;
      m.h(i, j) = sign * Y[i] * Y[j] / (q * q) + diag / (2 * q);
      m.h_inv(i, j) = 4 * Y[i] * Y[j] + 2 * q * diag;
    }
  m.det = m.h.determinant();
  return m;
}

namespace {

using cd = std::complex<double>;

// Omega_kappa F from central differences with step h (fourth order).
cd laplace_at_step(const TubeFunction& F, const TubePoint& Z, int kappa, double h) {
  const std::size_t l = Z.Y.size();
  const std::size_t n = 2 * l;
  RealVec u(n);
  for (std::size_t i = 0; i < l; ++i) {
    u[i] = Z.X[i];
    u[l + i] = Z.Y[i];
  }
  auto f = [&](const RealVec& v) {
    RealVec X(v.begin(), v.begin() + l), Y(v.begin() + l, v.end());
    cd r = F(X, Y);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
      throw std::domain_error("laplace_kappa: non-finite sample");
    return r;
  };
  auto shifted = [&](std::size_t a, double da, std::size_t b = 0, double db = 0) {
    RealVec v = u;
    v[a] += da;
    if (db != 0) v[b] += db;
    return f(v);
  };
  const cd f0 = f(u);
  std::vector<cd> grad(n);
  std::vector<std::vector<cd>> hess(n, std::vector<cd>(n));
  for (std::size_t a = 0; a < n; ++a) {
    cd p1 = shifted(a, h), m1 = shifted(a, -h), p2 = shifted(a, 2 * h), m2 = shifted(a, -2 * h);
    grad[a] = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12 * h);
    hess[a][a] = (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) / (12 * h * h);
  }
  auto cross = [&](std::size_t a, std::size_t b, double s) {
    return (shifted(a, s, b, s) - shifted(a, s, b, -s) - shifted(a, -s, b, s) +
            shifted(a, -s, b, -s)) /
           (4 * s * s);
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      cd v = (4.0 * cross(a, b, h / 2) - cross(a, b, h)) / 3.0;
      hess[a][b] = hess[b][a] = v;
    }

  const cd I(0, 1);
  auto dzdzbar = [&](std::size_t j, std::size_t i) {
    // d/dz_j d/dzbar_i = 1/4 (dxj - i dyj)(dxi + i dyi)
    return 0.25 * (hess[j][i] + hess[l + j][l + i] + I * (hess[j][l + i] - hess[l + j][i]));
  };
  const double q = tube_q(Z.Y);
  cd total = 0;
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t i = 0; i < l; ++i) total += 2.0 * Z.Y[i] * Z.Y[j] * dzdzbar(j, i);
  cd trace = dzdzbar(0, 0);
  for (std::size_t i = 1; i < l; ++i) trace -= dzdzbar(i, i);
  total -= q * trace;
  cd first = 0;
  for (std::size_t i = 0; i < l; ++i) first += Z.Y[i] * 0.5 * (grad[i] + I * grad[l + i]);
  total -= I * static_cast<double>(kappa) * first;
  return total;
}

}  // namespace

LaplaceValue laplace_kappa(const TubeFunction& F, const TubePoint& Z, int kappa, double step) {
  if (!(step > 0)) throw ValidationError("step must be positive");
  if (Z.X.size() != Z.Y.size()) throw ValidationError("X and Y must have the same length");
  check_cone(Z.Y);
  cd coarse = laplace_at_step(F, Z, kappa, step);
  cd fine = laplace_at_step(F, Z, kappa, step / 2);
  LaplaceValue r;
  r.error_estimate = std::abs(coarse - fine);
  r.value = coarse;
  // fourth-order error: R = (16 fine - coarse) / 15 when the two steps disagree noticeably
  if (r.error_estimate > 1e-8 * std::max(1.0, std::abs(coarse))) {
    r.value = (16.0 * fine - coarse) / 15.0;
    r.richardson = true;
  }
  return r;
}

BesselCheck bessel_sum_identity_check(int kappa, double y) {
  if (kappa < 0) throw ValidationError("kappa must be non-negative");
  if (y == 0) throw ValidationError("y must be nonzero");
  const double pi = std::numbers::pi;
  const double ay = std::fabs(y), sgn = y > 0 ? 1.0 : -1.0;
  BesselCheck c;
  double binom = 1;
  for (int h = 0; h <= kappa; ++h) {
    if (h > 0) binom = binom * (kappa - h + 1) / h;
    const int r = kappa - h;
    double fall = 1, jfact = 1, pw = 1;
    for (int j = 0; 2 * j <= r; ++j) {
      if (j > 0) {
        fall *= static_cast<double>((r - 2 * j + 2) * (r - 2 * j + 1));
        jfact *= j;
        pw *= 4 * pi * ay;
      }
      double term = (j % 2 ? -1.0 : 1.0) / (pw * jfact) * binom * fall * std::pow(sgn, r) *
                    bessel_k(-0.5 + r - j, 2 * pi * ay);
      c.lhs += term;
    }
  }
  c.rhs = y > 0 ? std::pow(2.0, kappa - 1) / std::sqrt(y) * std::exp(-2 * pi * y) : 0.0;
  c.abs_err = std::fabs(c.lhs - c.rhs);
  return c;
}

IntegralCheck laplace_integral_check(double alpha, double beta, double gamma) {
  if (!(alpha > 0) || !(beta > 0)) throw ValidationError("alpha and beta must be positive");
  // v = e^u: integrand exp(g(u)), g(u) = -alpha e^u - beta e^{-u} + (gamma + 1) u
  const double g1 = gamma + 1;
  auto g = [&](double u) { return -alpha * std::exp(u) - beta * std::exp(-u) + g1 * u; };
  const double w = (g1 + std::sqrt(g1 * g1 + 4 * alpha * beta)) / (2 * alpha);
  const double u0 = std::log(w), gmax = g(u0);
  const double cut = std::log(1e-16);
  double lo = u0, hi = u0;
  while (g(lo) - gmax > cut) lo -= 0.5;
  while (g(hi) - gmax > cut) hi += 0.5;
  auto f = [&](double u) { return std::exp(g(u) - gmax); };
  double err = 0;
  double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 20, 1e-14, &err);
  if (!std::isfinite(val) || err > 1e-10 * std::fabs(val))
    throw std::runtime_error("laplace_integral_check: quadrature did not converge");
  IntegralCheck c;
  c.quadrature = val * std::exp(gmax);
  c.closed = 2 * std::pow(beta / alpha, g1 / 2) * bessel_k(g1, 2 * std::sqrt(alpha * beta));
  c.rel_err = std::fabs(c.quadrature - c.closed) / std::fabs(c.closed);
  return c;
}

namespace {

struct SplitGram {
  Eigen::MatrixXd G;  // full Gram
  int nd = 0;         // rank of D
};

SplitGram split_gram(const IntMat& K) {
  const int n = static_cast<int>(K.size());
  if (n < 2) throw ValidationError("K must have rank at least 2");
  bool ok = K[0][0] == 0 && K[1][1] == 0 && K[0][1] == 1 && K[1][0] == 1;
  for (int j = 2; j < n && ok; ++j)
    ok = K[0][j] == 0 && K[1][j] == 0 && K[j][0] == 0 && K[j][1] == 0;
  if (!ok) throw ValidationError("K Gram must be U + D with the hyperbolic pair first");
  SplitGram s;
  s.G.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.G(i, j) = static_cast<double>(K[i][j]);
  s.nd = n - 2;
  return s;
}

double pair(const Eigen::MatrixXd& G, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.dot(G * b);
}

double q_tail(const Eigen::MatrixXd& G, const Eigen::VectorXd& v) {
  const int nd = static_cast<int>(v.size()) - 2;
  if (nd == 0) return 0;
  Eigen::VectorXd t = v.tail(nd);
  return 0.5 * t.dot(G.bottomRightCorner(nd, nd) * t);
}

Eigen::VectorXd to_eigen(const RealVec& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

SiegelMembership siegel_domain_check(const IntMat& K_gram, const RealVec& X, const RealVec& Y,
                                     double t) {
  if (!(t > 0)) throw ValidationError("t must be positive");
  SplitGram s = split_gram(K_gram);
  if (X.size() != K_gram.size() || Y.size() != K_gram.size())
    throw ValidationError("X and Y must have length rank(K)");
  Eigen::VectorXd x = to_eigen(X), y = to_eigen(Y);
  const double qy = 0.5 * pair(s.G, y, y);
  SiegelMembership m;
  m.x_bound = X[0] * X[0] + X[1] * X[1] + std::fabs(q_tail(s.G, x)) < t * t;
  m.y1_lower = 1 / t < Y[0];
  m.cone_ratio = Y[0] * Y[0] < t * t * qy;
  m.d_part = std::fabs(q_tail(s.G, y)) < t * t * Y[0] * Y[0];
  return m;
}

EpsilonEstimate siegel_epsilon_estimate(const IntMat& K_gram, double t, std::size_t samples,
                                        std::uint64_t seed) {
  if (!(t > 0)) throw ValidationError("t must be positive");
  if (samples == 0) throw ValidationError("need at least one sample");
  SplitGram s = split_gram(K_gram);
  const int n = static_cast<int>(K_gram.size());
  Eigen::MatrixXd GD = s.G.bottomRightCorner(s.nd, s.nd);
  if (s.nd > 0 && GD.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff() >= 0)
    throw ValidationError("D must be negative definite (K of signature (1, l-1))");
  const Eigen::MatrixXd Ginv = s.G.inverse();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-5, 5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  EpsilonEstimate best;
  best.eps_hat = std::numeric_limits<double>::infinity();
  std::size_t attempts = 0;
  while (best.samples < samples) {
    if (++attempts > 100 * samples) break;
    // lambda = G^{-1} u with integer u, i.e. an element of K'
    Eigen::VectorXd uvec(n);
    for (int i = 0; i < n; ++i) uvec(i) = coord(rng);
    if (uvec.isZero()) continue;
    Eigen::VectorXd lam = Ginv * uvec;
    // Y log-uniform in y1 and y2/y1, D part scaled against the R_t bounds
    Eigen::VectorXd Y(n);
    Y(0) = std::exp(std::log(1 / t) + 4 * unif(rng));
    Y(1) = Y(0) * std::exp(std::log(1 / (t * t)) + 6 * unif(rng));
    if (s.nd > 0) {
      Eigen::VectorXd v(s.nd);
      for (int i = 0; i < s.nd; ++i) v(i) = normal(rng);
      double qv = std::fabs(0.5 * v.dot(GD * v));
      double cap = std::min(t * t * Y(0) * Y(0), Y(0) * Y(1));
      double target = unif(rng) * cap;
      Y.tail(s.nd) = v * std::sqrt(target / qv);
    }
    RealVec yv(Y.data(), Y.data() + n), xv(n, 0.0);
    SiegelMembership m = siegel_domain_check(K_gram, xv, yv, t);
    if (!(m.y1_lower && m.cone_ratio && m.d_part)) continue;
    ++best.samples;

    const double YY = pair(s.G, Y, Y);
    const double lY = pair(s.G, lam, Y);
    const double ql = 0.5 * pair(s.G, lam, lam);
    const double l1 = pair(s.G, lam, Eigen::VectorXd::Unit(n, 1));  // (lambda, d)
    const double l2 = pair(s.G, lam, Eigen::VectorXd::Unit(n, 0));  // (lambda, d~)
    const double lD = 2 * std::fabs(q_tail(s.G, lam));
    const double den = Y(1) * Y(1) * l1 * l1 / 2 + Y(0) * Y(0) * l2 * l2 / 2 + YY * lD;
    if (!(den > 0)) continue;
    const double ratio = (lY * lY / YY - ql) * YY / den;
    if (ratio < best.eps_hat) {
      best.eps_hat = ratio;
      best.lambda.assign(lam.data(), lam.data() + n);
      best.Y = yv;
    }
  }
  if (best.samples == 0) throw ValidationError("no valid samples in R_t");
  return best;
}

// ---------------------------------------------------------------------------------------------

namespace {

void add_case(SuiteResult& r, std::string label, double err, double tol) {
  bool ok = std::isfinite(err) && err <= tol;
  r.cases.push_back({std::move(label), err, tol, ok});
  if (std::isfinite(err)) r.max_err = std::max(r.max_err, err);
  else r.max_err = std::numeric_limits<double>::infinity();
  r.pass = r.pass && ok;
}

RealVec random_cone_point(std::mt19937_64& rng, int l) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealVec Y(l);
  double tail = 0;
  for (int i = 1; i < l; ++i) {
    Y[i] = u(rng);
    tail += Y[i] * Y[i];
  }
  Y[0] = std::sqrt(tail) + 0.2 + std::fabs(u(rng)) * 2;
  return Y;
}

std::string fmt(double x) {
  std::string s = std::to_string(x);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

SuiteResult run_check_suite(const std::string& suite, std::uint64_t seed) {
  SuiteResult r;
  r.suite = suite;
  if (suite == "metric") {
    std::mt19937_64 rng(seed);
    for (int l = 2; l <= 6; ++l)
      for (int k = 0; k < 20; ++k) {
        RealVec Y = random_cone_point(rng, l);
        Metric m = hermitian_metric(Y);
        double q = tube_q(Y);
        double formula = 1 / (std::pow(2.0, l) * std::pow(q, l));
        std::string lab = "l=" + std::to_string(l) + " #" + std::to_string(k);
        add_case(r, "det " + lab, std::fabs(m.det - formula) / formula, 1e-10);
        double inv_err = (m.h * m.h_inv - Eigen::MatrixXd::Identity(l, l)).cwiseAbs().maxCoeff();
        add_case(r, "inverse " + lab, inv_err, 1e-10);
      }
  } else if (suite == "laplacian") {
    for (int l : {4, 6})
      for (int s = 1; s <= 3; ++s)
        for (int kappa = 0; kappa <= 4; ++kappa) {
          TubePoint Z;
          Z.X.assign(l, 0.1);
          Z.Y.assign(l, 0.0);
          Z.Y[0] = 2.0;
          for (int i = 1; i < l; ++i) Z.Y[i] = 0.3 + 0.1 * i;
          TubeFunction F = [s](const RealVec&, const RealVec& Y) {
            return std::complex<double>(std::pow(tube_q(Y), s), 0.0);
          };
          LaplaceValue v = laplace_kappa(F, Z, kappa);
          const double fz = std::pow(tube_q(Z.Y), s);
          const double lam = s * (s + kappa - l / 2.0);
          const double err = std::abs(v.value - lam * fz) / std::max(std::fabs(lam * fz), fz);
          add_case(r, "s=" + std::to_string(s) + " kappa=" + std::to_string(kappa) +
                          " l=" + std::to_string(l), err, 1e-6);
        }
  } else if (suite == "bessel") {
    for (int kappa = 0; kappa <= 6; ++kappa)
      for (double y : {0.1, 0.5, 1.0, 2.0, 5.0})
        for (double sgn : {1.0, -1.0}) {
          BesselCheck c = bessel_sum_identity_check(kappa, sgn * y);
          add_case(r, "kappa=" + std::to_string(kappa) + " y=" + fmt(sgn * y), c.abs_err, 1e-9);
        }
  } else if (suite == "integral") {
    for (double a : {0.5, 1.0, 4.0})
      for (double b : {0.5, 1.0, 3.0})
        for (double g : {-1.5, -0.5, 0.5, 1.5}) {
          IntegralCheck c = laplace_integral_check(a, b, g);
          add_case(r, "alpha=" + fmt(a) + " beta=" + fmt(b) + " gamma=" + fmt(g), c.rel_err, 1e-8);
        }
  } else if (suite == "siegel") {
    IntMat K = {{0, 1, 0}, {1, 0, 0}, {0, 0, -2}};
    RealVec X(3, 0.0), Y = {2.0, 1.0, 0.0};
    SiegelMembership m = siegel_domain_check(K, X, Y, 10.0);
    r.cases.push_back({"member t=10 Y=(2,1,0)", 0.0, 0.0, m.member()});
    r.pass = r.pass && m.member();
    EpsilonEstimate e = siegel_epsilon_estimate(K, 2.0, 10000, seed);
    bool pos = e.eps_hat > 0;
    r.cases.push_back({"eps_hat=" + fmt(e.eps_hat) + " t=2 samples=10000", 0.0, 0.0, pos});
    r.pass = r.pass && pos;
  } else {
    throw ValidationError("unknown suite '" + suite + "' (expected bessel, laplacian, integral, siegel, metric)");
  }
  return r;
}

}  // namespace weillift
