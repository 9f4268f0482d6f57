#pragma once

#include <memory>
#include <utility>

#include "weillift/cyclotomic.hpp"
#include "weillift/lattice.hpp"

namespace weillift {

// D = Z/d_1 x ... x Z/d_k with d_i | d_{i+1}, d_i > 1, carrying q: D -> Q/Z.
// Elements are residue tuples; the canonical index is mixed radix with the first
// coordinate most significant, so index order is lexicographic order of tuples.
class FiniteQuadraticModule {
 public:
  using Element = std::vector<i64>;

  // q(g_i) = qgen[i] / qden and b(g_i, g_j) = bgen[i][j] / qden, both mod 1.
  FiniteQuadraticModule(std::vector<i64> divisors, i64 qden, std::vector<i64> qgen,
                        std::vector<std::vector<i64>> bgen, Signature sig);

  std::size_t size() const { return size_; }
  const std::vector<i64>& divisors() const { return divisors_; }
  Signature signature() const { return sig_; }
  i64 exponent() const { return divisors_.empty() ? 1 : divisors_.back(); }
  i64 qden() const { return qden_; }
  const std::vector<i64>& qgen() const { return qgen_; }
  const std::vector<std::vector<i64>>& bgen() const { return bgen_; }

  Element element(std::size_t idx) const;
  std::size_t index(const Element& a) const;  // residues are reduced first

  i64 q_num(std::size_t idx) const { return qtab_[idx]; }  // q = q_num / qden
  mpq_class q(std::size_t idx) const;
  i64 b_num(std::size_t x, std::size_t y) const;  // b = b_num / qden
  mpq_class b(std::size_t x, std::size_t y) const;

  std::size_t add(std::size_t x, std::size_t y) const;
  std::size_t neg(std::size_t x) const;
  std::size_t scale(std::size_t x, i64 k) const;
  i64 order(std::size_t x) const;
  std::size_t zero() const { return 0; }

  // Working cyclotomic order M = lcm(8, qden, 4|D|).
  i64 working_order() const;

 private:
  std::vector<i64> divisors_;
  i64 qden_;
  std::vector<i64> qgen_;
  std::vector<std::vector<i64>> bgen_;
  Signature sig_;
  std::size_t size_;
  std::vector<i64> qtab_;
};

using ModulePtr = std::shared_ptr<const FiniteQuadraticModule>;

// L'/L together with the change of basis needed to move between dual-lattice vectors
// and residue tuples.
struct DiscriminantForm {
  ModulePtr module;
  IntMat U, V;               // Smith form U G V = diag
  std::vector<i64> invariants;  // all n invariant factors
  int first = 0;             // invariants[first..] are the nontrivial ones
  i64 exponent = 1;

  // e * representative of element idx, as integer L-coordinates (e = exponent).
  IntVec rep_numerator(std::size_t idx) const;
  RatVec rep(std::size_t idx) const;
  // Residue class of v in L'/L; throws ValidationError if v is not in L'.
  std::size_t reduce(const IntMat& gram, const RatVec& v) const;
};

DiscriminantForm discriminant_form(const IntegralLattice& L);

struct IsotropicElement {
  std::size_t index;
  i64 order;
};
std::vector<IsotropicElement> isotropic_elements(const FiniteQuadraticModule& D);

// sum_g e(q(g)) and sqrt|D| e((b+ - b-)/8), exactly.
std::pair<CycloNum, CycloNum> milgram_sides(const FiniteQuadraticModule& D);
bool milgram_holds(const FiniteQuadraticModule& D);

}  // namespace weillift
