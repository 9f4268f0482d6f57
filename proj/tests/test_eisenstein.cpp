#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "weillift/eisenstein.hpp"

using namespace weillift;
using testing_support::e;
using testing_support::lat;

namespace {

using cd = std::complex<double>;

// sum_{n > 0, n = b mod N} n^{-s}: direct sum plus an Euler-Maclaurin tail.
double partial_zeta_oracle(double s, i64 b, i64 N) {
  i64 r = mod(b, N);
  if (r == 0) r = N;
  const i64 K = 200000;
  double sum = 0;
  for (i64 k = K - 1; k >= 0; --k) sum += std::pow(double(r + N * k), -s);
  double x = double(r + N * K);
  // sum_{k >= K} f(k) with f(k) = (r + N k)^{-s}
  double tail = std::pow(x, 1 - s) / (N * (s - 1)) + 0.5 * std::pow(x, -s) +
                s * N * std::pow(x, -s - 1) / 12.0;
  return sum + tail;
}

cd divisor_sum_oracle(i64 m, i64 c, i64 Nl, i64 b, i64 Nz, int kappa) {
  cd s = 0;
  for (i64 n = -m; n <= m; ++n) {
    if (n == 0 || m % n != 0) continue;
    if (mod(m / n - c, Nl) != 0) continue;
    double w = (n > 0 ? 1 : -1) * std::pow(double(n), kappa - 1);  // sgn(n) n^{kappa-1}
    s += w * e(double(n * b) / double(Nz));
  }
  return s;
}

// Coefficient a(m) of the boundary expansion in its symmetrized form: positive divisors n | m
// and every b mod N_z, weighted by [class = beta] + (-1)^kappa [class = -beta].
cd qexp_oracle(const IntegralLattice& L, const DiscriminantForm& DL, const IsotropicCusp& cu,
               const BoundaryLine& d, std::size_t beta, int kappa, i64 m) {
  const i64 Nz = cu.level, Nd = d.level;
  const std::size_t neg = DL.module->neg(beta);
  if (m == 0) {
    cd s = 0;
    for (i64 b = 0; b < Nz; ++b)
      if (boundary_class(L, DL, cu, d, 0, b) == beta)
        s += cd(constant_term_numeric(Nz, b, kappa));
    return s;
  }
  const double sym = kappa % 2 ? -1.0 : 1.0;
  cd s = 0;
  for (i64 n = 1; n <= m; ++n) {
    if (m % n != 0) continue;
    for (i64 b = 0; b < Nz; ++b) {
      std::size_t cls = boundary_class(L, DL, cu, d, mod(m / n, Nd), b);
      double w = (cls == beta ? 1.0 : 0.0) + (cls == neg ? sym : 0.0);
      s += w * std::pow(double(n), kappa - 1) * e(double(n * b) / double(Nz));
    }
  }
  return s * e(-double(m * d.d_zeta) / double(Nz * Nd));
}

mpq_class sigma(i64 m, int k) {
  mpz_class s = 0, p;
  for (i64 n : divisors(m)) {
    mpz_ui_pow_ui(p.get_mpz_t(), n, k);
    s += p;
  }
  return mpq_class(s);
}

}  // namespace

TEST_SUITE("eisenstein") {

TEST_CASE("twisted divisor sums") {
  CHECK(twisted_divisor_sum(2, 0, 1, 1, 2, 2).rational() == mpq_class(2));
  CHECK(twisted_divisor_sum(6, 0, 1, 0, 1, 4).rational() == mpq_class(504));
  for (i64 m = 1; m <= 30; ++m)
    for (i64 Nl : {1, 2, 3})
      for (i64 Nz : {1, 2, 5})
        for (int kappa : {2, 3, 4})
          for (i64 c = 0; c < Nl; ++c)
            for (i64 b = 0; b < Nz; ++b) {
              auto got = twisted_divisor_sum(m, c, Nl, b, Nz, kappa).approx();
              CHECK(std::abs(got - divisor_sum_oracle(m, c, Nl, b, Nz, kappa)) < 1e-8);
            }
  CHECK_THROWS_AS(twisted_divisor_sum(0, 0, 1, 0, 1, 4), ValidationError);
}

TEST_CASE("partial zeta against direct summation") {
  for (i64 N : {1, 2, 3, 5, 6})
    for (i64 b = 0; b < N; ++b)
      for (double s : {2.0, 3.0, 4.5, 8.0}) {
        double want = partial_zeta_oracle(s, b, N);
        CHECK(std::abs(double(partial_zeta(s, b, N)) - want) < 1e-11 * std::abs(want));
      }
  CHECK(std::abs(double(hurwitz_zeta(2, 1)) - M_PI * M_PI / 6) < 1e-15);
}

TEST_CASE("constant terms: closed form, numeric values and spot checks") {
  CHECK(constant_term(2, 1, 2).rational() == mpq_class(-1, 4));
  CHECK(constant_term(1, 0, 4).rational() == mpq_class(1, 120));
  for (int k = 2; k <= 12; k += 2) CHECK(constant_term(1, 0, k).rational() == -bernoulli(k) / k);
  for (i64 N = 1; N <= 6; ++N)
    for (i64 b = 0; b < N; ++b)
      for (int k = 2; k <= 8; ++k) {
        cd ex = constant_term(N, b, k).approx();
        cd nu(constant_term_numeric(N, b, k));
        CHECK(std::abs(ex - nu) <= 1e-10 * std::max(1.0, std::abs(nu)));
      }
}

TEST_CASE("unimodular boundary expansion is the classical Eisenstein series") {
  auto L = lat({"U", "U", "E8(-1)"});
  IntVec z(12, 0), d(12, 0);
  RatVec zp(12, mpq_class(0));
  z[0] = 1;
  zp[1] = 1;
  d[2] = 1;
  auto cu = cusp_data(L, z, zp);
  auto line = boundary_line(L, cu, d);
  for (int k : {4, 6, 8, 10, 14}) {
    auto q = boundary_qexpansion(L, cu, line, 0, k, 20);
    mpq_class c0 = -bernoulli(k) / k;
    CHECK(q.coeff(0).rational() == c0);
    for (i64 m = 1; m <= 20; ++m) CHECK(q.coeff(m).rational() == c0 * (-2 * k / bernoulli(k)) * sigma(m, k - 1));
  }
  auto q4 = boundary_qexpansion(L, cu, line, 0, 4, 3);
  CHECK(q4.coeff(1).rational() == 2);
  CHECK(q4.coeff(2).rational() == 18);
  CHECK(q4.coeff(3).rational() == 56);
}

TEST_CASE("boundary expansion against the symmetrized double-delta form") {
  // N_z = 2, N_d = 3
  auto L = lat({"U(2)", "U(3)", "A1(-1)"});
  auto DL = discriminant_form(L);
  auto cu = cusp_data(L, {1, 0, 0, 0, 0}, {0, mpq_class(1, 2), 0, 0, 0});
  auto line = boundary_line(L, cu, {0, 0, 1, 0, 0});
  REQUIRE(cu.level == 2);
  REQUIRE(line.level == 3);
  int nonzero = 0;
  for (std::size_t beta = 0; beta < DL.module->size(); ++beta)
    for (int kappa : {2, 3, 4}) {
      auto q = boundary_qexpansion(L, cu, line, beta, kappa, 10);
      for (i64 m = 0; m <= 10; ++m) {
        cd want = qexp_oracle(L, DL, cu, line, beta, kappa, m);
        cd got = q.coeff(m).approx();
        CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        nonzero += std::abs(want) > 1e-9;
      }
    }
  CHECK(nonzero > 0);
  auto ser = boundary_qexpansion(L, cu, line, 1, 3, 12, Exec::serial);
  auto par = boundary_qexpansion(L, cu, line, 1, 3, 12, Exec::parallel);
  CHECK(ser.coeffs.size() == par.coeffs.size());
  for (const auto& [m, v] : ser.coeffs) CHECK(par.coeff(m) == v);
}

TEST_CASE("projection onto the Eisenstein line") {
  for (i64 N = 1; N <= 7; ++N)
    for (int k = 2; k <= 6; ++k) {
      auto coef = eisenstein_projection_coeffs(N, k);
      CHECK(coef.size() == static_cast<std::size_t>(euler_phi(N)));
      for (auto [b, unused] : coef) {
        (void)unused;
        cd v = 0;
        for (auto [c, x] : coef) v += cd(x) * constant_term(N, mod(c * inv_mod(b, N), N), k).approx();
        // (1/2) ([b = 1] + (-1)^k [b = -1])
        double want = 0.5 * ((mod(b - 1, N) == 0) + ((k % 2) ? -1 : 1) * (mod(b + 1, N) == 0));
        CAPTURE(N);
        CAPTURE(k);
        CAPTURE(b);
        CHECK(std::abs(v - want) < 1e-10);
      }
    }
}

TEST_CASE("adjoint vector against direct summation") {
  auto L = lat({"U", "U(2)", "A2(-1)", "A1(-1)", "A1(-1)"});  // signature (2, 6)
  auto D = discriminant_form(L).module;
  const int l = 6, kappa = l / 2 - 1;
  std::map<std::size_t, double> a, C;
  std::size_t count = 0;
  for (const auto& iso : isotropic_elements(*D)) {
    a[iso.index] = 1.0 + 0.25 * double(count);
    if (count % 2) C[iso.index] = 0.5;
    ++count;
  }
  auto v = assemble_adjoint_vector(*D, a, C, l);
  std::vector<double> want(D->size(), 0);
  const double pre = std::tgamma(l / 2.0) / (2 * std::pow(2 * M_PI, l / 2.0));
  for (auto [delta, ad] : a) {
    double cdel = C.count(delta) ? C[delta] : 1.0;
    i64 N = D->order(delta);
    for (i64 k = 0; k < N; ++k)
      want[D->scale(delta, k)] += pre * partial_zeta_oracle(l - kappa, k, N) * ad * cdel;
  }
  REQUIRE(v.size() == want.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - want[i]) < 1e-11);
  std::size_t bad = 0;
  while (bad < D->size() && D->q_num(bad) == 0) ++bad;
  REQUIRE(bad < D->size());
  CHECK_THROWS_AS(assemble_adjoint_vector(*D, {{bad, 1.0}}, {}, l), ValidationError);
  CHECK_THROWS_AS(assemble_adjoint_vector(*D, a, C, 5), ValidationError);
}

TEST_CASE("singular dimension reports") {
  auto r = singular_dim(lat({"U", "U", "E8(-1)"}));
  CHECK(r.is_2l);
  CHECK(r.dim_inv == 1);
  CHECK(r.splits_two_U == "yes");
  REQUIRE(r.kappa.has_value());
  CHECK(*r.kappa == 4);
  REQUIRE(r.dim_boundary_eisenstein.has_value());
  CHECK(*r.dim_boundary_eisenstein == 1);
  REQUIRE(r.witness.has_value());
  auto L = lat({"U", "U", "E8(-1)"});
  const auto& w = *r.witness;
  CHECK(L.norm(w.e1) == 0);
  CHECK(L.norm(w.f1) == 0);
  CHECK(L.pair(w.e1, w.f1) == 1);
  CHECK(L.pair(w.e1, w.e2) == 0);
  CHECK(L.pair(w.f1, w.f2) == 0);
  CHECK(L.pair(w.e2, w.f2) == 1);

  auto a2 = singular_dim(lat({"U", "U", "A2(-1)"}));
  CHECK(a2.dim_inv == 0);
  CHECK(a2.splits_two_U == "yes");
  REQUIRE(a2.dim_boundary_eisenstein.has_value());
  CHECK(*a2.dim_boundary_eisenstein == 0);

  auto a1 = singular_dim(lat({"U", "U", "A1(-1)"}));
  CHECK(a1.dim_inv == 0);
  CHECK(a1.splits_two_U == "yes");
  CHECK_FALSE(a1.is_2l);
  CHECK_FALSE(a1.dim_boundary_eisenstein.has_value());
  CHECK_FALSE(a1.flags.empty());

  auto u = singular_dim(lat({"U"}));
  CHECK(u.splits_two_U == "no");
  CHECK_FALSE(u.flags.empty());
}

}
