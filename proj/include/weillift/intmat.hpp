#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "weillift/numtheory.hpp"

namespace weillift {

using IntVec = std::vector<i64>;
using IntMat = std::vector<IntVec>;  // row-major
using RatVec = std::vector<mpq_class>;
using RatMat = std::vector<RatVec>;

IntMat identity_matrix(int n);
IntMat transpose(const IntMat& a);
IntMat matmul(const IntMat& a, const IntMat& b);
IntVec matvec(const IntMat& a, const IntVec& v);
RatVec matvec(const IntMat& a, const RatVec& v);
i64 dot(const IntVec& a, const IntVec& b);
mpq_class dot(const RatVec& a, const RatVec& b);
RatVec to_rat(const IntVec& v);
i64 content(const IntVec& v);  // gcd of entries

// U * A * V = diag(d_1, ..., d_n) with d_i | d_{i+1}, U and V unimodular.
struct SmithForm {
  IntMat U, V;
  IntVec diag;
  int rank = 0;
};
SmithForm smith_normal_form(const IntMat& a);

// Row Hermite normal form of the lattice spanned by the rows (zero rows dropped).
IntMat hermite_rows(IntMat rows);
// Basis (as rows, in Hermite form) of {x in Z^n : A x = 0}.
IntMat integer_kernel(const IntMat& a);

mpz_class determinant(const IntMat& a);

// Exact solution of A x = b over Q, or nullopt if inconsistent. A is m x n with full column rank
// on the consistent part; free variables are set to zero.
std::optional<RatVec> solve_rational(const RatMat& a, const RatVec& b);

}  // namespace weillift
