#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "weillift/numtheory.hpp"

namespace weillift {

// Reduction tables for Q(zeta_M): Phi_M and the power-basis images of x^j, j < M.
// Built once per order and shared read-only afterwards.
struct CycloField {
  i64 order;
  int degree;
  std::vector<i64> phi;                  // monic, phi[degree] == 1
  std::vector<std::vector<i64>> powers;  // powers[j] = x^j mod Phi_M

  static std::shared_ptr<const CycloField> get(i64 order);
};

// Element of Q(zeta_M) in the power basis 1, zeta, ..., zeta^{phi(M)-1}.
// Stored as integer numerators over one positive denominator, content-reduced,
// so the representation at a fixed order is canonical.
class CycloNum {
 public:
  CycloNum();
  CycloNum(long n);  // NOLINT: integers embed everywhere
  explicit CycloNum(const mpq_class& r, i64 order = 1);

  static CycloNum zeta(i64 order, i64 k = 1);
  // e(a/b), living in Q(zeta_b') with b' the reduced denominator.
  static CycloNum root_of_unity(i64 a, i64 b);
  // Positive square root of n, built from quadratic Gauss sums.
  static CycloNum sqrt_nat(i64 n);
  // sum_k counts[k] * zeta_order^k
  static CycloNum from_root_counts(i64 order, const std::vector<i64>& counts);
  static CycloNum from_coeffs(i64 order, const std::vector<mpq_class>& c);

  i64 order() const { return field_->order; }
  int degree() const { return field_->degree; }
  std::vector<mpq_class> coeffs() const;
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  // Same value, represented in Q(zeta_m); requires order() | m.
  CycloNum lift(i64 m) const;
  // Same value in Q(zeta_m) for m | order(), or nullopt if it does not lie there.
  std::optional<CycloNum> descend(i64 m) const;
  // Representation at the smallest order containing the value.
  CycloNum normalized() const;

  bool is_zero() const;
  std::optional<mpq_class> rational() const;

  CycloNum conj() const;
  CycloNum inv() const;
  // this * zeta_M^k with M = order(); exact and cheap (permutation + reduction).
  CycloNum times_root(i64 k) const;
  std::complex<double> approx() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator*=(const mpq_class& r);
  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator*(CycloNum a, const mpq_class& r) { return a *= r; }
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inv(); }
  friend bool operator==(const CycloNum& a, const CycloNum& b);
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

 private:
  CycloNum(std::shared_ptr<const CycloField> f, std::vector<mpz_class> num, mpz_class den);
  void reduce_content();
  // Accumulate an M-periodic coefficient vector (index = exponent mod M) into canonical form.
  static CycloNum from_periodic(std::shared_ptr<const CycloField> f,
                                const std::vector<mpz_class>& per, const mpz_class& den);

  std::shared_ptr<const CycloField> field_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

}  // namespace weillift
