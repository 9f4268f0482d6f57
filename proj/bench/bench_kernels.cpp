// Serial reference vs OpenMP kernels. Both paths return identical results (see tests).
#include <benchmark/benchmark.h>

#include "weillift/cusp.hpp"
#include "weillift/theta.hpp"
#include "weillift/weil.hpp"

using namespace weillift;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_Shintani(benchmark::State& st) {
  auto L = IntegralLattice::direct_sum({IntegralLattice::hyperbolic(2), IntegralLattice::a2()});
  auto DL = discriminant_form(L);
  SL2 M{2, 1, 5, 3};
  for (auto _ : st) benchmark::DoNotOptimize(rho_shintani(L, DL, M, exec_of(st)));
}
BENCHMARK(BM_Shintani)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_Theta(benchmark::State& st) {
  auto E8 = IntegralLattice::e8();
  RatVec zero(8, mpq_class(0));
  for (auto _ : st) benchmark::DoNotOptimize(theta_coefficients(E8, zero, 3, exec_of(st)));
}
BENCHMARK(BM_Theta)->Arg(0)->Arg(1)->ArgName("parallel");

void BM_IsotropicSearch(benchmark::State& st) {
  auto L = IntegralLattice::direct_sum(
      {IntegralLattice::hyperbolic(), IntegralLattice::hyperbolic(), IntegralLattice::a1().scaled(-1)});
  for (auto _ : st) benchmark::DoNotOptimize(find_isotropic_vectors(L, 3, exec_of(st)));
}
BENCHMARK(BM_IsotropicSearch)->Arg(0)->Arg(1)->ArgName("parallel");

}  // namespace

BENCHMARK_MAIN();
