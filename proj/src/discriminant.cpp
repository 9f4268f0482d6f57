#include "weillift/discriminant.hpp"

namespace weillift {

FiniteQuadraticModule::FiniteQuadraticModule(std::vector<i64> divisors, i64 qden,
                                             std::vector<i64> qgen,
                                             std::vector<std::vector<i64>> bgen, Signature sig)
    : divisors_(std::move(divisors)),
      qden_(qden),
      qgen_(std::move(qgen)),
      bgen_(std::move(bgen)),
      sig_(sig) {
  const std::size_t k = divisors_.size();
  if (qden_ < 1) throw ValidationError("quadratic form denominator must be positive");
  if (qgen_.size() != k || bgen_.size() != k)
    throw ValidationError("quadratic module data has inconsistent sizes");
  for (std::size_t i = 0; i < k; ++i) {
    if (divisors_[i] < 2) throw ValidationError("elementary divisors must exceed 1");
    if (i > 0 && divisors_[i] % divisors_[i - 1] != 0)
      throw ValidationError("elementary divisors must form a divisibility chain");
    if (bgen_[i].size() != k) throw ValidationError("bilinear table must be square");
    qgen_[i] = mod(qgen_[i], qden_);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      bgen_[i][j] = mod(bgen_[i][j], qden_);
      if (mod(bgen_[i][j] - bgen_[j][i], qden_) != 0)
        throw ValidationError("bilinear form is not symmetric");
      if (mod(checked_mul(divisors_[i], bgen_[i][j]), qden_) != 0)
        throw ValidationError("bilinear form is not well defined on the given group");
    }
  for (std::size_t i = 0; i < k; ++i) {
    if (mod(2 * qgen_[i] - bgen_[i][i], qden_) != 0)
      throw ValidationError("quadratic form does not polarize to the bilinear form");
    if (mod(checked_mul(checked_mul(divisors_[i], divisors_[i]), qgen_[i]), qden_) != 0)
      throw ValidationError("quadratic form is not well defined on the given group");
  }
  size_ = 1;
  for (i64 d : divisors_) size_ *= static_cast<std::size_t>(d);
  qtab_.resize(size_);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    Element a = element(idx);
    i64 s = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (a[i] == 0) continue;
      s = mod(s + mod(a[i] * a[i], qden_) * qgen_[i], qden_);
      for (std::size_t j = i + 1; j < k; ++j)
        s = mod(s + mod(a[i] * a[j], qden_) * bgen_[i][j], qden_);
    }
    qtab_[idx] = s;
  }
}

FiniteQuadraticModule::Element FiniteQuadraticModule::element(std::size_t idx) const {
  Element a(divisors_.size());
  for (std::size_t i = divisors_.size(); i-- > 0;) {
    a[i] = static_cast<i64>(idx % static_cast<std::size_t>(divisors_[i]));
    idx /= static_cast<std::size_t>(divisors_[i]);
  }
  return a;
}

std::size_t FiniteQuadraticModule::index(const Element& a) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < divisors_.size(); ++i)
    idx = idx * static_cast<std::size_t>(divisors_[i]) +
          static_cast<std::size_t>(mod(a[i], divisors_[i]));
  return idx;
}

mpq_class FiniteQuadraticModule::q(std::size_t idx) const {
  mpq_class r(qtab_[idx], qden_);
  r.canonicalize();
  return r;
}

i64 FiniteQuadraticModule::b_num(std::size_t x, std::size_t y) const {
  Element a = element(x), c = element(y);
  i64 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) s = mod(s + mod(a[i] * c[j], qden_) * bgen_[i][j], qden_);
  }
  return s;
}

mpq_class FiniteQuadraticModule::b(std::size_t x, std::size_t y) const {
  mpq_class r(b_num(x, y), qden_);
  r.canonicalize();
  return r;
}

std::size_t FiniteQuadraticModule::add(std::size_t x, std::size_t y) const {
  Element a = element(x), c = element(y);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c[i];
  return index(a);
}

std::size_t FiniteQuadraticModule::neg(std::size_t x) const { return scale(x, -1); }

std::size_t FiniteQuadraticModule::scale(std::size_t x, i64 k) const {
  Element a = element(x);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod(mod(k, divisors_[i]) * a[i], divisors_[i]);
  return index(a);
}

i64 FiniteQuadraticModule::order(std::size_t x) const {
  Element a = element(x);
  i64 o = 1;
  for (std::size_t i = 0; i < a.size(); ++i) o = lcm(o, divisors_[i] / gcd(a[i], divisors_[i]));
  return o;
}

i64 FiniteQuadraticModule::working_order() const {
  return lcm(lcm(8, qden_), checked_mul(4, static_cast<i64>(size_)));
}

IntVec DiscriminantForm::rep_numerator(std::size_t idx) const {
  auto a = module->element(idx);
  const std::size_t n = V.size();
  IntVec w(n, 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    i64 f = checked_mul(a[k], exponent / invariants[first + k]);
    if (f == 0) continue;
    for (std::size_t i = 0; i < n; ++i) w[i] = checked_add(w[i], checked_mul(f, V[i][first + k]));
  }
  return w;
}

RatVec DiscriminantForm::rep(std::size_t idx) const {
  IntVec w = rep_numerator(idx);
  RatVec v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    v[i] = mpq_class(w[i], exponent);
    v[i].canonicalize();
  }
  return v;
}

std::size_t DiscriminantForm::reduce(const IntMat& gram, const RatVec& v) const {
  RatVec x = matvec(gram, v);
  IntVec xi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].get_den() != 1) throw ValidationError("vector is not in the dual lattice");
    xi[i] = x[i].get_num().get_si();
  }
  IntVec y = matvec(U, xi);
  FiniteQuadraticModule::Element a(module->divisors().size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = mod(y[first + k], invariants[first + k]);
  return module->index(a);
}

DiscriminantForm discriminant_form(const IntegralLattice& L) {
  const IntMat& G = L.gram();
  SmithForm s = smith_normal_form(G);
  DiscriminantForm out;
  out.U = s.U;
  out.V = s.V;
  out.invariants = s.diag;
  const int n = L.rank();
  out.first = 0;
  while (out.first < n && out.invariants[out.first] == 1) ++out.first;
  std::vector<i64> divs(out.invariants.begin() + out.first, out.invariants.end());
  out.exponent = divs.empty() ? 1 : divs.back();
  const i64 qden = 2 * out.exponent;
  const std::size_t k = divs.size();
  std::vector<RatVec> gens(k, RatVec(n));
  for (std::size_t a = 0; a < k; ++a)
    for (int i = 0; i < n; ++i) {
      gens[a][i] = mpq_class(s.V[i][out.first + a], divs[a]);
      gens[a][i].canonicalize();
    }
  std::vector<i64> qgen(k);
  std::vector<std::vector<i64>> bgen(k, std::vector<i64>(k));
  auto to_num = [&](const mpq_class& x) {
    mpq_class t = mpq_mod1(x) * qden;
    if (t.get_den() != 1) throw std::logic_error("discriminant form denominator mismatch");
    return t.get_num().get_si();
  };
  for (std::size_t a = 0; a < k; ++a) {
    qgen[a] = to_num(L.q(gens[a]));
    for (std::size_t b = 0; b < k; ++b) bgen[a][b] = to_num(L.pair(gens[a], gens[b]));
  }
  out.module = std::make_shared<FiniteQuadraticModule>(divs, qden, qgen, bgen, L.signature());
  return out;
}

std::vector<IsotropicElement> isotropic_elements(const FiniteQuadraticModule& D) {
  std::vector<IsotropicElement> out;
  for (std::size_t i = 0; i < D.size(); ++i)
    if (D.q_num(i) == 0) out.push_back({i, D.order(i)});
  return out;
}

std::pair<CycloNum, CycloNum> milgram_sides(const FiniteQuadraticModule& D) {
  std::vector<i64> counts(D.qden(), 0);
  for (std::size_t i = 0; i < D.size(); ++i) counts[D.q_num(i)] += 1;
  CycloNum lhs = CycloNum::from_root_counts(D.qden(), counts);
  Signature s = D.signature();
  CycloNum rhs = CycloNum::sqrt_nat(static_cast<i64>(D.size())) * CycloNum::zeta(8, s.plus - s.minus);
  return {lhs, rhs};
}

bool milgram_holds(const FiniteQuadraticModule& D) {
  auto [l, r] = milgram_sides(D);
  return l == r;
}

}  // namespace weillift
