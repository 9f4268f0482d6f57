#pragma once

#include <string>

#include "weillift/cusp.hpp"
#include "weillift/discriminant.hpp"
#include "weillift/exec.hpp"

namespace weillift {

struct SL2 {
  i64 a = 1, b = 0, c = 0, d = 1;
  i64 det() const { return a * d - b * c; }
  SL2 operator*(const SL2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const SL2&) const = default;
  std::string str() const;
};

inline constexpr SL2 kT{1, 1, 0, 1};
inline constexpr SL2 kS{0, -1, 1, 0};
inline constexpr SL2 kZ{-1, 0, 0, -1};

enum class Generator { T, S, Z };

// A word letter g^power; S and Z letters always have power 1.
struct Letter {
  Generator g;
  i64 power = 1;
};
using Word = std::vector<Letter>;
std::string word_string(const Word& w);

using CycloVec = std::vector<CycloNum>;

// |D| x |D| matrix; entry (beta, gamma) is the coefficient of e_beta in rho(M) e_gamma.
class WeilMatrix {
 public:
  WeilMatrix(ModulePtr module, std::vector<CycloNum> entries, std::string label);
  static WeilMatrix identity(ModulePtr module);

  std::size_t dim() const { return module_->size(); }
  const CycloNum& at(std::size_t beta, std::size_t gamma) const {
    return entries_[beta * dim() + gamma];
  }
  CycloNum& at(std::size_t beta, std::size_t gamma) { return entries_[beta * dim() + gamma]; }
  const ModulePtr& module() const { return module_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

  WeilMatrix operator*(const WeilMatrix& o) const;
  CycloVec apply(const CycloVec& v) const;
  CycloVec column(std::size_t gamma) const;
  WeilMatrix adjoint() const;
  bool is_identity() const;
  bool is_unitary() const;
  friend bool operator==(const WeilMatrix& x, const WeilMatrix& y);

 private:
  ModulePtr module_;
  std::vector<CycloNum> entries_;
  std::string label_;
};

WeilMatrix rho_generator(const ModulePtr& D, Generator g);
// Product of generator matrices for the word, taken literally (no lift correction).
WeilMatrix rho_letters(const ModulePtr& D, const Word& w);

struct LiftedWord {
  Word word;        // M = product of letters, left to right
  bool flip_sign;   // word's metaplectic branch is minus the standard lift
};
// Euclidean decomposition M = T^{q1} S T^{q2} S ... [Z] T^b of the bottom row.
LiftedWord standard_word(const SL2& M);
// rho of the standard lift (M, sqrt(c tau + d)) via the word decomposition.
WeilMatrix rho_word(const ModulePtr& D, const SL2& M);

// Shintani's closed formula. `budget` caps |c|^rank.
WeilMatrix rho_shintani(const IntegralLattice& L, const DiscriminantForm& DL, const SL2& M,
                        Exec exec = Exec::parallel, double budget = kDefaultWorkBudget);
WeilMatrix rho_shintani(const IntegralLattice& L, const SL2& M, Exec exec = Exec::parallel,
                        double budget = kDefaultWorkBudget);
// Straightforward evaluation of the same formula with rational exponents and one CycloNum
// addition per Gauss-sum term; slow, kept as the reference for the histogram kernel.
WeilMatrix rho_shintani_reference(const IntegralLattice& L, const DiscriminantForm& DL,
                                  const SL2& M, double budget = kDefaultWorkBudget);

struct CompatSides {
  CycloVec lhs, rhs;
  bool equal() const;
};
// Both sides of rho_L(M) sum_m e_{gamma + m z/N}(-mn/N) =
// (rho_K(M) e_gamma) sum_m e_{m z/N - n c z'}(-amn/N + q(z') a c n^2), gamma in K'/K by index.
CompatSides rho_K_compat_sides(const IntegralLattice& L, const IsotropicCusp& cusp, const SL2& M,
                               std::size_t gamma, i64 n, double budget = kDefaultWorkBudget);
bool rho_K_compat_check(const IntegralLattice& L, const IsotropicCusp& cusp, const SL2& M,
                        std::size_t gamma, i64 n, double budget = kDefaultWorkBudget);

struct InvariantBasis {
  std::size_t dimension = 0;
  std::vector<CycloVec> basis;
};
// Kernel of (rho(T) - I; rho(S) - I) in reduced row echelon form; each basis vector has a
// single 1 at a free (isotropic) coordinate that is zero in the others.
InvariantBasis invariants_basis(const ModulePtr& D);

}  // namespace weillift
