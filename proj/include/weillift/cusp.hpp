#pragma once

#include <functional>

#include "weillift/discriminant.hpp"
#include "weillift/exec.hpp"

namespace weillift {

// Data attached to a primitive isotropic z with dual partner z'. All vectors are in the
// coordinates of L's basis.
struct IsotropicCusp {
  IntVec z;
  RatVec z_prime;
  i64 level = 1;  // N_z, (z, L) = N_z Z
  IntVec zeta;    // (z, zeta) = N_z
  RatVec zeta_K;
  mpq_class zeta_B;  // zeta = zeta_K + N_z z' + B z
  IntMat K_basis;    // rows span K = L ∩ z^⊥ ∩ z'^⊥ (Hermite form)
  IntMat K_gram;

  IntegralLattice K() const { return IntegralLattice(K_gram, "K"); }

  RatVec orthogonal_projection(const IntegralLattice& L, const RatVec& lam) const;  // lambda_K
  // pi(lambda) = lambda_K + ((lambda, z)/N_z) zeta_K on L_0'
  RatVec project(const IntegralLattice& L, const RatVec& lam) const;
  RatVec to_K_coords(const RatVec& v) const;    // v in K ⊗ Q, given in L coordinates
  RatVec from_K_coords(const RatVec& y) const;  // inverse of to_K_coords
};

IsotropicCusp cusp_data(const IntegralLattice& L, const IntVec& z, const RatVec& z_prime);

struct CuspReport {
  bool surjective = false;       // L_0'/L -> K'/K hits every class
  bool index_formula = false;    // |det L| = |det K| N_z^2
  bool gram_two_ways = false;    // kernel basis vs projection of L ∩ z^⊥
  bool generators_fixed = false; // pi = id on a generating set of K'
};
CuspReport verify_cusp(const IntegralLattice& L, const IsotropicCusp& c);

// Gram matrix of K obtained as the Hermite basis of P(L ∩ z^⊥), P the orthogonal projection.
IntMat k_gram_via_projection(const IntegralLattice& L, const IsotropicCusp& c);

// Element of L'/L representing gamma in K'/K: gamma - ((gamma, zeta_K)/N_z) z.
RatVec lift_from_K(const IntegralLattice& L, const IsotropicCusp& c, const RatVec& gamma_L);

struct IsotropicVector {
  IntVec z;
  i64 level;
};
// Primitive isotropic vectors with |coordinates| <= bound, one per sign pair (first nonzero
// coordinate positive), sorted lexicographically.
std::vector<IsotropicVector> find_isotropic_vectors(const IntegralLattice& L, int bound,
                                                    Exec exec = Exec::parallel,
                                                    double budget = kDefaultWorkBudget);

}  // namespace weillift
