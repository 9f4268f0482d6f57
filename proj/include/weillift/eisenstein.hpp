#pragma once

#include <map>
#include <optional>

#include "weillift/cusp.hpp"
#include "weillift/exec.hpp"
#include "weillift/special.hpp"

namespace weillift {

// sum over n | m of both signs with m/n = c mod N_lambda of sgn(n) n^{kappa-1} e(n b / N_z)
CycloNum twisted_divisor_sum(i64 m, i64 c, i64 N_lambda, i64 b, i64 N_z, int kappa);

// Gamma(kappa) N^kappa / (-2 pi i)^kappa * (zeta_+^b(kappa) + (-1)^kappa zeta_+^{-b}(kappa)),
// zeta_+^b(s) = sum_{n > 0, n = b mod N} n^{-s}. Exact:
//   -(-1)^kappa N^{kappa-1} / kappa * sum_{j mod N} e(-jb/N) B_kappa(j/N).
CycloNum constant_term(i64 N, i64 b, int kappa);
// Same quantity from Hurwitz zeta values.
cld constant_term_numeric(i64 N, i64 b, int kappa);

// Constant term at the cusp: picks the b with beta = b z / N_z, zero if there is none.
CycloNum constant_term(const IntegralLattice& L, const IsotropicCusp& cusp, std::size_t beta,
                       int kappa);

// Primitive isotropic d in K (L coordinates) spanning a boundary plane <z, d>.
struct BoundaryLine {
  IntVec d;
  i64 level = 1;     // N_d, (d, K) = N_d Z
  i64 d_zeta = 0;    // (d, zeta) = (d, zeta_K)
};
BoundaryLine boundary_line(const IntegralLattice& L, const IsotropicCusp& cusp, const IntVec& d);

struct BoundaryDecomposition {
  bool exists = false;
  i64 c_beta = 0;  // mod N_d
  i64 b_beta = 0;  // mod N_z
};
// Class of c d/N_d - c (d, zeta) z/(N_d N_z) + b z/N_z in L'/L.
std::size_t boundary_class(const IntegralLattice& L, const DiscriminantForm& DL,
                           const IsotropicCusp& cusp, const BoundaryLine& d, i64 c, i64 b);
BoundaryDecomposition decompose_beta(const IntegralLattice& L, const DiscriminantForm& DL,
                                     const IsotropicCusp& cusp, const BoundaryLine& d,
                                     std::size_t beta);

// sum_m a(m) q^{m/N}, m = 0..prec.
struct QExpansion {
  i64 N = 1;
  i64 prec = 0;
  std::map<i64, CycloNum> coeffs;  // zero coefficients omitted
  CycloNum coeff(i64 m) const;
};

QExpansion boundary_qexpansion(const IntegralLattice& L, const IsotropicCusp& cusp,
                               const BoundaryLine& d, std::size_t beta, int kappa, i64 prec,
                               Exec exec = Exec::parallel);

// c in (Z/N)^x -> (-2 pi i)^kappa / (2 phi(N) Gamma(kappa) N^kappa) sum_chi chi(c) / L(chi, kappa)
std::map<i64, cld> eisenstein_projection_coeffs(i64 N, int kappa);

// Gamma(l/2) / (2 (2 pi)^{l/2}) sum_delta sum_{k mod N_delta} zeta_+^k(l - kappa) a_delta C_delta e_{k delta}
// with kappa = l/2 - 1. Missing C entries default to 1.
std::vector<double> assemble_adjoint_vector(const FiniteQuadraticModule& D,
                                            const std::map<std::size_t, double>& a,
                                            const std::map<std::size_t, double>& C, int l);

struct SplitWitness {
  IntVec e1, f1, e2, f2;  // hyperbolic pairs, L coordinates
};
struct SingularDimReport {
  Signature signature;
  bool is_2l = false;        // signature (2, l) with l >= 4 even
  int l = 0;
  std::optional<int> kappa;  // l/2 - 1
  std::size_t dim_inv = 0;
  std::string splits_two_U;  // "yes", "no", "unknown"
  std::optional<SplitWitness> witness;
  std::optional<std::size_t> dim_boundary_eisenstein;
  std::vector<std::string> flags;
};
SingularDimReport singular_dim(const IntegralLattice& L,
                               const std::optional<SplitWitness>& hint = std::nullopt,
                               double budget = kDefaultWorkBudget);

}  // namespace weillift
