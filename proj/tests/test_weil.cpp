#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "support.hpp"

#include "weillift/cusp.hpp"
#include "weillift/weil.hpp"

using namespace weillift;
using testing_support::e;
using testing_support::lat;

namespace {

ModulePtr module_of(const IntegralLattice& L) { return discriminant_form(L).module; }

SL2 random_sl2(std::mt19937_64& rng, int cmax) {
  std::uniform_int_distribution<i64> cd(-cmax, cmax), dd(-12, 12);
  for (;;) {
    i64 c = cd(rng), d = dd(rng);
    if (gcd(c, d) != 1) continue;
    auto [g, x, y] = ext_gcd(d, -c);  // a d - b c = 1 with a = x, b = y
    (void)g;
    i64 a = x, b = y;
    i64 t = dd(rng) / 3;  // shift by a random left T-power
    return SL2{a + t * c, b + t * d, c, d};
  }
}

Eigen::MatrixXcd to_eigen(const WeilMatrix& W) {
  Eigen::MatrixXcd m(W.dim(), W.dim());
  for (std::size_t i = 0; i < W.dim(); ++i)
    for (std::size_t j = 0; j < W.dim(); ++j) m(i, j) = W.at(i, j).approx();
  return m;
}

}  // namespace

TEST_SUITE("weil") {

TEST_CASE("generators against their defining formulas") {
  for (auto& [name, L] : testing_support::module_corpus()) {
    CAPTURE(name);
    auto D = module_of(L);
    const std::size_t n = D->size();
    Signature s = D->signature();
    auto T = rho_generator(D, Generator::T), S = rho_generator(D, Generator::S),
         Z = rho_generator(D, Generator::Z);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t g = 0; g < n; ++g) {
        std::complex<double> t = b == g ? e(D->q(g).get_d()) : 0.0;
        std::complex<double> sv = e((s.minus - s.plus) / 8.0) / std::sqrt(double(n)) *
                                  e(-D->b(b, g).get_d());
        std::complex<double> z = b == D->neg(g) ? e((s.minus - s.plus) / 4.0) : 0.0;
        CHECK(std::abs(T.at(b, g).approx() - t) < 1e-9);
        CHECK(std::abs(S.at(b, g).approx() - sv) < 1e-9);
        CHECK(std::abs(Z.at(b, g).approx() - z) < 1e-9);
      }
  }
}

TEST_CASE("relations and unitarity, exactly") {
  for (auto& [name, L] : testing_support::module_corpus()) {
    CAPTURE(name);
    auto D = module_of(L);
    auto T = rho_generator(D, Generator::T), S = rho_generator(D, Generator::S),
         Z = rho_generator(D, Generator::Z);
    CHECK(S * S == Z);
    auto ST = S * T;
    CHECK(ST * ST * ST == Z);
    CHECK(T.is_unitary());
    CHECK(S.is_unitary());
    CHECK(Z.is_unitary());
    // Z^2 = (-1)^{b- - b+}
    Signature s = D->signature();
    auto Z2 = Z * Z;
    bool even = (s.minus - s.plus) % 2 == 0;
    for (std::size_t i = 0; i < D->size(); ++i)
      CHECK(Z2.at(i, i) == CycloNum(even ? 1 : -1));
    CHECK((S * S.adjoint()).is_identity());
  }
}

TEST_CASE("word decomposition reproduces the matrix") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    SL2 M = random_sl2(rng, 40);
    SL2 P;
    for (const auto& l : standard_word(M).word) {
      SL2 g = l.g == Generator::T ? kT : l.g == Generator::S ? kS : kZ;
      SL2 gp;
      for (i64 k = 0; k < std::abs(l.power); ++k) gp = gp * g;
      if (l.power < 0) gp = SL2{gp.d, -gp.b, -gp.c, gp.a};
      P = P * gp;
    }
    CHECK(P == M);
  }
}

TEST_CASE("Shintani: histogram kernel, reference and word agree") {
  std::mt19937_64 rng(11);
  std::vector<IntegralLattice> ls = {lat({"A1"}), lat({"A2"}), lat({"U(2)"}), lat({"A1(3)"}),
                                     lat({"A1", "A1(-1)"})};
  for (const auto& L : ls) {
    auto DL = discriminant_form(L);
    for (int it = 0; it < 5; ++it) {
      SL2 M = random_sl2(rng, 4);
      CAPTURE(M.str());
      auto par = rho_shintani(L, DL, M, Exec::parallel);
      CHECK(par == rho_shintani(L, DL, M, Exec::serial));
      CHECK(par == rho_word(DL.module, M));
      if (it < 2) CHECK(par == rho_shintani_reference(L, DL, M));
    }
  }
}

TEST_CASE("multiplicativity up to the metaplectic sign") {
  std::mt19937_64 rng(5);
  auto L = lat({"A2", "A1"});
  auto D = module_of(L);
  for (int it = 0; it < 20; ++it) {
    SL2 A = random_sl2(rng, 6), B = random_sl2(rng, 6);
    auto prod = rho_word(D, A) * rho_word(D, B);
    auto direct = rho_word(D, A * B);
    auto neg = prod;
    for (std::size_t i = 0; i < D->size(); ++i)
      for (std::size_t j = 0; j < D->size(); ++j) neg.at(i, j) = -prod.at(i, j);
    CHECK((direct == prod || direct == neg));
  }
}

TEST_CASE("Shintani budget") {
  auto L = lat({"A2", "A1"});
  CHECK_THROWS_AS(rho_shintani(L, SL2{1, 0, 50, 1}, Exec::parallel, 1000.0), BudgetExceeded);
  CHECK_NOTHROW(rho_shintani(L, SL2{1, 0, 5, 1}, Exec::parallel, 1000.0));
}

TEST_CASE("invariants are fixed and their count matches a numeric null space") {
  for (auto& [name, L] : testing_support::module_corpus()) {
    CAPTURE(name);
    auto D = module_of(L);
    auto inv = invariants_basis(D);
    auto T = rho_generator(D, Generator::T), S = rho_generator(D, Generator::S);
    CHECK(inv.basis.size() == inv.dimension);
    for (const auto& v : inv.basis) {
      auto tv = T.apply(v), sv = S.apply(v);
      for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(tv[i] == v[i]);
        CHECK(sv[i] == v[i]);
        CHECK(v[i] == v[D->neg(i)]);
        if (!v[i].is_zero()) CHECK(D->q(i) == 0);
      }
    }
    const auto n = static_cast<Eigen::Index>(D->size());
    Eigen::MatrixXcd stacked(2 * n, n);
    stacked << to_eigen(T) - Eigen::MatrixXcd::Identity(n, n),
        to_eigen(S) - Eigen::MatrixXcd::Identity(n, n);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(stacked);
    lu.setThreshold(1e-9);
    CHECK(static_cast<std::size_t>(n - lu.rank()) == inv.dimension);
  }
  CHECK(invariants_basis(module_of(lat({"E8"}))).dimension == 1);
  CHECK(invariants_basis(module_of(lat({"A1"}))).dimension == 0);
}

TEST_CASE("compatibility of rho_L and rho_K at a cusp") {
  auto L = lat({"U", "A1"});
  auto cusp = cusp_data(L, {1, 0, 0}, {mpq_class(0), mpq_class(1), mpq_class(0)});
  auto DK = discriminant_form(cusp.K());
  for (SL2 M : {kT, kS, kT * kS, kS * SL2{1, -1, 0, 1} * kS, SL2{2, 1, 3, 2}})
    for (std::size_t g = 0; g < DK.module->size(); ++g) {
      auto sides = rho_K_compat_sides(L, cusp, M, g, 0);
      CHECK(sides.equal());
    }
  // level 2: U(2) + U with z in U(2)
  auto L2 = lat({"U(2)", "U"});
  auto c2 = cusp_data(L2, {1, 0, 0, 0}, {mpq_class(0), mpq_class(1, 2), mpq_class(0), mpq_class(0)});
  REQUIRE(c2.level == 2);
  auto DK2 = discriminant_form(c2.K());
  for (SL2 M : {kT, kS, kT * kS})
    for (std::size_t g = 0; g < DK2.module->size(); ++g)
      for (i64 n = 0; n < c2.level; ++n) CHECK(rho_K_compat_check(L2, c2, M, g, n));
}

}
