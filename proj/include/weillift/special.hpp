#pragma once

#include <complex>
#include <vector>

#include "weillift/numtheory.hpp"

namespace weillift {

using cld = std::complex<long double>;

// Hurwitz zeta sum_{n >= 0} (n + a)^{-s}, real s > 1, a > 0 (Euler-Maclaurin).
long double hurwitz_zeta(long double s, long double a);
// sum_{n > 0, n = b mod N} n^{-s}
long double partial_zeta(long double s, i64 b, i64 N);

// The characters of (Z/N)^x, built from cyclic factors of the prime-power components.
class DirichletGroup {
 public:
  explicit DirichletGroup(i64 N);
  i64 modulus() const { return N_; }
  std::size_t size() const { return count_; }  // phi(N)
  // value of character number j at n (0 when gcd(n, N) > 1)
  cld value(std::size_t j, i64 n) const;
  const std::vector<i64>& units() const { return units_; }

 private:
  i64 N_;
  std::size_t count_ = 1;
  std::vector<i64> orders_;                 // orders of the cyclic factors
  std::vector<i64> units_;
  std::vector<std::vector<i64>> logs_;      // logs_[u][k]: discrete log of u in factor k
  std::vector<i64> unit_index_;             // residue -> position in units_, or -1
};

// L(chi_j, s) for real s > 1.
cld dirichlet_l(const DirichletGroup& G, std::size_t j, long double s);

// K_{n+1/2}(z) from the terminating series; n >= 0, z > 0.
double k_bessel_half(int n, double z);
// K_nu for any real order; half-integers use the closed form.
double bessel_k(double nu, double z);

}  // namespace weillift
