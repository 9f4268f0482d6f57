#pragma once

#include <map>

#include "weillift/exec.hpp"
#include "weillift/lattice.hpp"

namespace weillift {

// Counts r_gamma(n) = #{lambda in gamma + D : |q(lambda)| = n} for all n <= prec, where D is
// definite. Keys are the (rational) values |q| that occur; absent keys have count zero.
std::map<mpq_class, i64> theta_coefficients(const IntegralLattice& D, const RatVec& coset,
                                            const mpq_class& prec, Exec exec = Exec::parallel);

}  // namespace weillift
