#include "doctest.h"
#include "support.hpp"

#include "weillift/theta.hpp"

using namespace weillift;
using testing_support::e;
using testing_support::lat;

TEST_SUITE("lattice") {

TEST_CASE("validation of Gram matrices") {
  CHECK_THROWS_WITH_AS(IntegralLattice(IntMat{{1}}), doctest::Contains("even"), ValidationError);
  CHECK_THROWS_AS(IntegralLattice(IntMat{{2, 1}, {0, 2}}), ValidationError);
  CHECK_THROWS_AS(IntegralLattice(IntMat{{2, 2}, {2, 2}}), ValidationError);
  CHECK_THROWS_AS(IntegralLattice(IntMat{}), ValidationError);
  CHECK_THROWS_AS(named_lattice("B7"), ValidationError);
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"gram": [[2, "x"]]})")),
                  ValidationError);
}

TEST_CASE("named primitives") {
  struct Row {
    const char* spec;
    long det;
    int plus, minus;
  };
  for (auto r : {Row{"U", -1, 1, 1}, Row{"U(2)", -4, 1, 1}, Row{"A1", 2, 1, 0},
                 Row{"A2", 3, 2, 0}, Row{"E8", 1, 8, 0}, Row{"E8(-1)", 1, 0, 8},
                 Row{"A2(-1)", 3, 0, 2}, Row{"A1(3)", 6, 1, 0}}) {
    CAPTURE(r.spec);
    auto L = named_lattice(r.spec);
    CHECK(L.det() == r.det);
    CHECK(L.signature() == Signature{r.plus, r.minus});
  }
}

TEST_CASE("JSON lattice input") {
  auto j = nlohmann::json::parse(R"({"name": "x", "sum": ["U", {"gram": [[2, -1], [-1, 2]]}]})");
  auto L = lattice_from_json(j);
  CHECK(L.rank() == 4);
  CHECK(L.det() == -3);
  CHECK(L.name() == "x");
}

TEST_CASE("vector parsing") {
  CHECK(parse_int_vector("1,0,-2") == IntVec{1, 0, -2});
  CHECK(parse_int_vector("1 0 -2") == IntVec{1, 0, -2});
  CHECK(parse_rat_vector("1/2,0")[0] == mpq_class(1, 2));
  CHECK_THROWS_AS(parse_int_vector("1/2"), ValidationError);
  CHECK_THROWS_AS(parse_int_vector(""), ValidationError);
}

TEST_CASE("elementary divisors multiply to |det|") {
  std::vector<IntegralLattice> ls;
  for (auto& n : testing_support::module_corpus()) ls.push_back(n.L);
  ls.push_back(IntegralLattice(IntMat{{4, 2, 0}, {2, 6, 2}, {0, 2, 8}}));
  ls.push_back(IntegralLattice(IntMat{{2, 3}, {3, -4}}));
  REQUIRE(ls.size() >= 10);
  for (const auto& L : ls) {
    auto DL = discriminant_form(L);
    const auto& D = *DL.module;
    mpz_class prod = 1;
    for (std::size_t i = 0; i < D.divisors().size(); ++i) {
      prod *= D.divisors()[i];
      CHECK(D.divisors()[i] > 1);
      if (i + 1 < D.divisors().size()) CHECK(D.divisors()[i + 1] % D.divisors()[i] == 0);
    }
    CHECK(prod == abs(L.det()));
    CHECK(mpz_class(static_cast<unsigned long>(D.size())) == abs(L.det()));
  }
}

TEST_CASE("q is a quadratic refinement of b and agrees with the lattice") {
  for (auto& [name, L] : testing_support::module_corpus()) {
    CAPTURE(name);
    auto DL = discriminant_form(L);
    const auto& D = *DL.module;
    for (std::size_t x = 0; x < D.size(); ++x) {
      CHECK(D.q(x) == mpq_mod1(L.q(DL.rep(x))));
      CHECK(DL.reduce(L.gram(), DL.rep(x)) == x);
      for (i64 k = -3; k <= 3; ++k) CHECK(D.q(D.scale(x, k)) == mpq_mod1(D.q(x) * k * k));
      for (std::size_t y = 0; y < D.size(); ++y) {
        CHECK(mpq_mod1(D.q(D.add(x, y)) - D.q(x) - D.q(y)) == D.b(x, y));
        CHECK(D.b(x, y) == mpq_mod1(L.pair(DL.rep(x), DL.rep(y))));
      }
    }
  }
}

TEST_CASE("reduce rejects vectors outside the dual") {
  auto L = lat({"A1"});
  auto DL = discriminant_form(L);
  CHECK_THROWS_AS(DL.reduce(L.gram(), RatVec{mpq_class(1, 3)}), ValidationError);
}

TEST_CASE("Milgram formula against complex evaluation") {
  for (auto& [name, L] : testing_support::module_corpus()) {
    CAPTURE(name);
    auto DL = discriminant_form(L);
    const auto& D = *DL.module;
    CHECK(milgram_holds(D));
    std::complex<double> g = 0;
    for (std::size_t x = 0; x < D.size(); ++x) g += e(D.q(x).get_d());
    Signature s = D.signature();
    auto rhs = std::sqrt(double(D.size())) * e((s.plus - s.minus) / 8.0);
    CHECK(std::abs(g - rhs) < 1e-9);
  }
}

TEST_CASE("isotropic elements against brute force") {
  for (auto& [name, L] : testing_support::module_corpus()) {
    auto DL = discriminant_form(L);
    const auto& D = *DL.module;
    std::vector<std::size_t> want;
    for (std::size_t x = 0; x < D.size(); ++x)
      if (D.q(x) == 0) want.push_back(x);
    auto got = isotropic_elements(D);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].index == want[i]);
      i64 k = 1;
      while (D.scale(want[i], k) != D.zero()) ++k;
      CHECK(got[i].order == k);
    }
  }
}

TEST_CASE("theta coefficients of A1 and E8") {
  auto A1 = lat({"A1"});
  auto t = theta_coefficients(A1, {mpq_class(0)}, 9);
  CHECK(t[mpq_class(0)] == 1);
  CHECK(t[mpq_class(1)] == 2);
  CHECK(t[mpq_class(4)] == 2);
  CHECK(t[mpq_class(9)] == 2);
  CHECK(t.count(mpq_class(2)) == 0);
  auto E8 = lat({"E8"});
  auto te = theta_coefficients(E8, RatVec(8, mpq_class(0)), 2);
  CHECK(te[mpq_class(1)] == 240);
  CHECK(te[mpq_class(2)] == 2160);
  auto tn = theta_coefficients(lat({"E8(-1)"}), RatVec(8, mpq_class(0)), 1);
  CHECK(tn[mpq_class(1)] == 240);
}

TEST_CASE("theta against box enumeration and symmetry") {
  auto L = lat({"A2", "A1"});
  auto DL = discriminant_form(L);
  const mpq_class prec(7, 2);
  for (std::size_t g = 0; g < DL.module->size(); ++g) {
    RatVec c = DL.rep(g);
    std::map<mpq_class, i64> brute;
    for (int x = -6; x <= 6; ++x)
      for (int y = -6; y <= 6; ++y)
        for (int z = -6; z <= 6; ++z) {
          RatVec v{c[0] + x, c[1] + y, c[2] + z};
          mpq_class n = L.q(v);
          if (n <= prec) ++brute[n];
        }
    CHECK(theta_coefficients(L, c, prec) == brute);
    RatVec neg = c;
    for (auto& x : neg) x = -x;
    CHECK(theta_coefficients(L, neg, prec) == brute);
    CHECK(theta_coefficients(L, c, prec, Exec::serial) == brute);
  }
  CHECK_THROWS_AS(theta_coefficients(lat({"U"}), RatVec(2, mpq_class(0)), 1), ValidationError);
}

}
