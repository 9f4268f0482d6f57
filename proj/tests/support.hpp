#pragma once

#include <complex>
#include <string>
#include <vector>

#include "weillift/discriminant.hpp"
#include "weillift/lattice.hpp"

namespace testing_support {

using weillift::IntegralLattice;

inline IntegralLattice lat(const std::vector<std::string>& parts) {
  std::vector<IntegralLattice> ls;
  for (const auto& p : parts) ls.push_back(weillift::named_lattice(p));
  return IntegralLattice::direct_sum(ls);
}

struct Named {
  std::string name;
  IntegralLattice L;
};

// Discriminant forms used for the exact relation checks.
inline std::vector<Named> module_corpus() {
  return {
      {"U (trivial)", lat({"U"})},
      {"A1", lat({"A1"})},
      {"A2", lat({"A2"})},
      {"U(3)", lat({"U(3)"})},
      {"U(2)+U", lat({"U(2)", "U"})},
      {"U+U+A2", lat({"U", "U", "A2"})},
      {"A1(-1)", lat({"A1(-1)"})},
      {"A1+A1", lat({"A1", "A1"})},
      {"U(4)", lat({"U(4)"})},
      {"A2+A1", lat({"A2", "A1"})},
      {"A1(3)", lat({"A1(3)"})},
      {"E8", lat({"E8"})},
  };
}

inline std::complex<double> e(double x) { return std::polar(1.0, 2 * M_PI * x); }

}  // namespace testing_support
