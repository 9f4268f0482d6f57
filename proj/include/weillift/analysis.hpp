#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "weillift/intmat.hpp"

namespace weillift {

using RealVec = std::vector<double>;

// Point of the tube domain in a basis where q(Y) = y1^2 - y2^2 - ... - yl^2.
struct TubePoint {
  RealVec X, Y;
};
double tube_q(const RealVec& Y);
void check_cone(const RealVec& Y);  // throws ValidationError unless y1 > 0 and q(Y) > 0

struct Metric {
  Eigen::MatrixXd h, h_inv;
  double det = 0;
};
Metric hermitian_metric(const RealVec& Y);

using TubeFunction = std::function<std::complex<double>(const RealVec& X, const RealVec& Y)>;
struct LaplaceValue {
  std::complex<double> value;
  double error_estimate = 0;  // |result(step) - result(step/2)|
  bool richardson = false;    // the extrapolated value was returned
};
// Omega_kappa F at Z:
//   2 sum_ij y_i y_j d^2F/dz_j dzbar_i - q(Y)(d^2F/dz_1 dzbar_1 - sum_{i>1} d^2F/dz_i dzbar_i)
//   - i kappa sum_i y_i dF/dzbar_i
// with fourth-order central differences in the 2l real coordinates.
LaplaceValue laplace_kappa(const TubeFunction& F, const TubePoint& Z, int kappa,
                           double step = 1e-3);

struct BesselCheck {
  double lhs = 0, rhs = 0, abs_err = 0;
};
BesselCheck bessel_sum_identity_check(int kappa, double y);

struct IntegralCheck {
  double quadrature = 0, closed = 0, rel_err = 0;
};
// int_0^inf exp(-alpha v - beta/v) v^gamma dv against 2 (beta/alpha)^{(gamma+1)/2} K_{gamma+1}(2 sqrt(alpha beta)).
IntegralCheck laplace_integral_check(double alpha, double beta, double gamma);

// K in the basis (d~, d, D) with Gram U + D_gram, so q(Y) = y1 y2 + q(Y_D).
struct SiegelMembership {
  bool x_bound = false;     // x1^2 + x2^2 + |q(X_D)| < t^2
  bool y1_lower = false;    // 1/t < y1
  bool cone_ratio = false;  // y1^2 < t^2 q(Y)
  bool d_part = false;      // |q(Y_D)| < t^2 y1^2
  bool member() const { return x_bound && y1_lower && cone_ratio && d_part; }
};
SiegelMembership siegel_domain_check(const IntMat& K_gram, const RealVec& X, const RealVec& Y,
                                     double t);

struct EpsilonEstimate {
  double eps_hat = 0;
  RealVec lambda, Y;  // sample achieving the minimum (lambda in K basis coordinates)
  std::size_t samples = 0;
};
// Running minimum over `samples` draws of
//   ((lambda, Y)^2 / Y^2 - q(lambda)) Y^2 / (y2^2 l1^2 / 2 + y1^2 l2^2 / 2 + Y^2 l_D^2),
// Y^2 = (Y, Y), lambda in K' with dual coordinates in [-5, 5], Y log-uniform in R_t.
EpsilonEstimate siegel_epsilon_estimate(const IntMat& K_gram, double t, std::size_t samples,
                                        std::uint64_t seed = 0);

// Suites backing the `check` subcommand.
struct CheckCase {
  std::string label;
  double err = 0;
  double tol = 0;
  bool pass = false;
};
struct SuiteResult {
  std::string suite;
  std::vector<CheckCase> cases;
  double max_err = 0;
  bool pass = true;
};
SuiteResult run_check_suite(const std::string& suite, std::uint64_t seed = 0);

}  // namespace weillift
