#include <random>

#include "doctest.h"

#include "weillift/numtheory.hpp"

using namespace weillift;

TEST_SUITE("numtheory") {

TEST_CASE("gcd, lcm and extended gcd") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<i64> dist(-5000, 5000);
  for (int it = 0; it < 500; ++it) {
    i64 a = dist(rng), b = dist(rng);
    auto [g, x, y] = ext_gcd(a, b);
    CHECK(g == gcd(a, b));
    CHECK(a * x + b * y == g);
    if (g != 0) {
      CHECK(a % g == 0);
      CHECK(b % g == 0);
    }
    if (a != 0 && b != 0) CHECK(lcm(a, b) * g == std::abs(a * b));
  }
}

TEST_CASE("mod and inverse") {
  for (i64 m = 1; m < 40; ++m)
    for (i64 a = -60; a < 60; ++a) {
      i64 r = mod(a, m);
      CHECK(r >= 0);
      CHECK(r < m);
      CHECK((a - r) % m == 0);
      if (gcd(a, m) == 1) CHECK(mod(a * inv_mod(a, m), m) == 1 % m);
    }
  CHECK_THROWS(inv_mod(4, 6));
}

TEST_CASE("factor, phi and moebius against brute force") {
  for (i64 n = 1; n < 400; ++n) {
    i64 prod = 1;
    for (auto [p, e] : factor(n))
      for (int i = 0; i < e; ++i) prod *= p;
    CHECK(prod == n);
    i64 phi = 0, ndiv = 0;
    for (i64 k = 1; k <= n; ++k) {
      if (gcd(k, n) == 1) ++phi;
      if (n % k == 0) ++ndiv;
    }
    CHECK(euler_phi(n) == phi);
    CHECK(static_cast<i64>(divisors(n).size()) == ndiv);
    // sum_{d | n} mu(d) = [n == 1]
    int s = 0;
    for (i64 d : divisors(n)) s += moebius(d);
    CHECK(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("Bernoulli numbers and polynomials") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(4) == mpq_class(-1, 30));
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(bernoulli(13) == 0);
  for (int n = 0; n < 14; ++n) {
    CHECK(bernoulli_poly(n, 0) == bernoulli(n));
    // B_n(x + 1) - B_n(x) = n x^{n-1}
    for (int k = 0; k < 5; ++k) {
      mpq_class x(k, 7);
      x.canonicalize();
      mpq_class lhs = bernoulli_poly(n, x + 1) - bernoulli_poly(n, x);
      mpq_class rhs = 0;
      if (n >= 1) {
        rhs = n;
        for (int i = 0; i < n - 1; ++i) rhs *= x;
      }
      CHECK(lhs == rhs);
      mpq_class sym = bernoulli_poly(n, 1 - x);
      CHECK(sym == ((n % 2) ? mpq_class(-bernoulli_poly(n, x)) : bernoulli_poly(n, x)));
    }
  }
}

TEST_CASE("rational text round trip") {
  for (const char* s : {"0", "1/4", "-3/7", "12", "-5"}) CHECK(to_string(parse_rational(s)) == s);
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(mpq_mod1(mpq_class(-1, 4)) == mpq_class(3, 4));
  CHECK_THROWS_AS(parse_rational("x"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_mul(1 << 20, 1 << 20) == (i64(1) << 40));
  CHECK_THROWS(checked_mul(i64(1) << 40, i64(1) << 40));
  CHECK_THROWS(checked_add(INT64_MAX, 1));
}

}
