#pragma once

namespace weillift {

// Kernels with a data-parallel loop take this switch; `serial` is the reference path
// used by the tests and benchmarks, and both produce identical results.
enum class Exec { serial, parallel };

inline constexpr double kDefaultWorkBudget = 1e7;

}  // namespace weillift
