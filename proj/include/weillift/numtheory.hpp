#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace weillift {

using i64 = std::int64_t;

// Raised for malformed input; the CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an enumeration would exceed the configured work budget (exit 3).
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double required, double budget)
      : std::runtime_error(what), required_(required), budget_(budget) {}
  double required() const { return required_; }
  double budget() const { return budget_; }

 private:
  double required_;
  double budget_;
};

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);  // >= 0
// Non-negative residue of a mod m (m > 0).
i64 mod(i64 a, i64 m);
// Returns g = gcd(a, b) >= 0 together with x, y such that a*x + b*y = g.
struct ExtGcd {
  i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b);
// Inverse of a modulo m; throws if gcd(a, m) != 1.
i64 inv_mod(i64 a, i64 m);

i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);

std::vector<std::pair<i64, int>> factor(i64 n);
std::vector<i64> divisors(i64 n);
i64 euler_phi(i64 n);
int moebius(i64 n);

// Bernoulli numbers with B_1 = -1/2.
mpq_class bernoulli(int n);
// Bernoulli polynomial B_n(x).
mpq_class bernoulli_poly(int n, const mpq_class& x);

mpq_class mpq_mod1(const mpq_class& x);
std::string to_string(const mpq_class& x);
mpq_class parse_rational(const std::string& s);

}  // namespace weillift
