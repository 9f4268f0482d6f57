#include "weillift/numtheory.hpp"

#include <algorithm>
#include <mutex>

namespace weillift {

i64 gcd(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  const i64 aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
  return checked_mul(aa / gcd(aa, bb), bb);
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

ExtGcd ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

i64 inv_mod(i64 a, i64 m) {
  if (m == 1) return 0;
  auto e = ext_gcd(mod(a, m), m);
  if (e.g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(e.x, m);
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> d{1};
  for (auto [p, e] : factor(n)) {
    std::size_t k = d.size();
    i64 pk = 1;
    for (int j = 1; j <= e; ++j) {
      pk *= p;
      for (std::size_t i = 0; i < k; ++i) d.push_back(d[i] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

int moebius(i64 n) {
  int s = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

mpq_class bernoulli(int n) {
  static std::mutex mu;
  static std::vector<mpq_class> cache{mpq_class(1)};
  std::lock_guard<std::mutex> lock(mu);
  // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
  while (static_cast<int>(cache.size()) <= n) {
    int m = static_cast<int>(cache.size());
    mpq_class s = 0;
    mpz_class binom = 1;
    for (int k = 0; k < m; ++k) {
      s += binom * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    cache.push_back(-s / (m + 1));
  }
  return cache[n];
}

mpq_class bernoulli_poly(int n, const mpq_class& x) {
  mpq_class s = 0, xp = 1;
  mpz_class binom = 1;  // C(n, n-k) built up from k = n down
  // B_n(x) = sum_k C(n,k) B_k x^{n-k}; iterate from k = n so powers of x grow.
  for (int k = n; k >= 0; --k) {
    s += binom * bernoulli(k) * xp;
    xp *= x;
    binom = binom * k / (n - k + 1);
  }
  return s;
}

mpq_class mpq_mod1(const mpq_class& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpq_class r = x - mpq_class(q);
  r.canonicalize();
  return r;
}

std::string to_string(const mpq_class& x) { return x.get_str(); }

mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw ValidationError("not a rational number: '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace weillift
