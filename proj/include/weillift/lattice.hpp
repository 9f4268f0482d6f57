#pragma once

#include <string>

#include "json.hpp"

#include "weillift/intmat.hpp"

namespace weillift {

struct Signature {
  int plus = 0;
  int minus = 0;
  bool operator==(const Signature&) const = default;
};

// Even non-degenerate lattice given by its Gram matrix in a fixed basis.
class IntegralLattice {
 public:
  // Validates symmetry, even diagonal and non-degeneracy; throws ValidationError.
  explicit IntegralLattice(IntMat gram, std::string name = "");

  const IntMat& gram() const { return gram_; }
  int rank() const { return static_cast<int>(gram_.size()); }
  Signature signature() const { return sig_; }
  const std::string& name() const { return name_; }
  const mpz_class& det() const { return det_; }
  bool is_definite() const { return sig_.plus == 0 || sig_.minus == 0; }

  i64 pair(const IntVec& a, const IntVec& b) const;
  mpq_class pair(const RatVec& a, const RatVec& b) const;
  mpq_class q(const RatVec& a) const { return pair(a, a) / 2; }
  i64 norm(const IntVec& a) const { return pair(a, a); }  // (a, a), always even

  static IntegralLattice hyperbolic(i64 n = 1);  // U(n)
  static IntegralLattice a1();
  static IntegralLattice a2();
  static IntegralLattice e8();
  IntegralLattice scaled(i64 n) const;
  static IntegralLattice direct_sum(const std::vector<IntegralLattice>& parts);

 private:
  IntMat gram_;
  std::string name_;
  Signature sig_;
  mpz_class det_;
};

// Named primitive: "U", "A1", "A2", "E8", optionally scaled as "X(n)" (e.g. "U(2)", "E8(-1)").
IntegralLattice named_lattice(const std::string& spec);
IntegralLattice lattice_from_json(const nlohmann::json& j);
IntegralLattice load_lattice(const std::string& path);

// Parse "1,0,-2" or "1 0 -2"; entries may be rationals "1/2".
RatVec parse_rat_vector(const std::string& s);
IntVec parse_int_vector(const std::string& s);

}  // namespace weillift
