#include "weillift/json_io.hpp"

#include <cmath>

namespace weillift {

namespace {
// Rounding residue of exact zeros; keeps "approx" blocks readable.
double clean(double x) { return std::abs(x) < 1e-15 ? 0.0 : x; }
}  // namespace

json cyclo_json(const CycloNum& x) {
  json c = json::array();
  for (const auto& q : x.coeffs()) c.push_back(to_string(q));
  auto a = x.approx();
  return {{"order", x.order()}, {"coeffs", c}, {"approx", {clean(a.real()), clean(a.imag())}}};
}

json exact_json(const CycloNum& x) {
  if (auto r = x.rational()) return to_string(*r);
  return cyclo_json(x);
}

CycloNum at_order(const CycloNum& x, i64 M) {
  if (x.order() == M) return x;
  const i64 big = lcm(x.order(), M);
  auto d = x.lift(big).descend(M);
  return d ? *d : x;
}

json rat_json(const mpq_class& x) { return to_string(x); }

json rat_vec_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json int_mat_json(const IntMat& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(row);
  return a;
}

json module_json(const FiniteQuadraticModule& D) {
  json elems = json::array(), q = json::array();
  for (std::size_t i = 0; i < D.size(); ++i) {
    elems.push_back(D.element(i));
    q.push_back(to_string(D.q(i)));
  }
  Signature s = D.signature();
  return {{"divisors", D.divisors()},
          {"order", D.size()},
          {"signature", {s.plus, s.minus}},
          {"elements", elems},
          {"q", q}};
}

json weil_json(const WeilMatrix& W) {
  const i64 M = W.module()->working_order();
  json entries = json::array(), approx = json::array();
  for (std::size_t i = 0; i < W.dim(); ++i) {
    json row = json::array(), arow = json::array();
    for (std::size_t j = 0; j < W.dim(); ++j) {
      CycloNum x = at_order(W.at(i, j), M);
      row.push_back(cyclo_json(x));
      auto a = x.approx();
      arow.push_back({clean(a.real()), clean(a.imag())});
    }
    entries.push_back(row);
    approx.push_back(arow);
  }
  return {{"label", W.label()}, {"dim", W.dim()}, {"entries", entries}, {"approx", approx}};
}

json qexp_json(const QExpansion& q) {
  json coeffs = json::object();
  for (const auto& [m, v] : q.coeffs) coeffs[std::to_string(m)] = exact_json(v);
  return {{"N", q.N}, {"prec", q.prec}, {"coeffs", coeffs}, {"constant", exact_json(q.coeff(0))}};
}

}  // namespace weillift
