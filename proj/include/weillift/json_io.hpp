#pragma once

#include "json.hpp"

#include "weillift/eisenstein.hpp"
#include "weillift/weil.hpp"

namespace weillift {

using nlohmann::json;

// {"order": M, "coeffs": ["p/q", ...], "approx": [re, im]}
json cyclo_json(const CycloNum& x);
// "p/q" for rational values, otherwise the CycloNum object.
json exact_json(const CycloNum& x);
// Same value re-expressed at order M when it lies in Q(zeta_M).
CycloNum at_order(const CycloNum& x, i64 M);

json rat_json(const mpq_class& x);
json rat_vec_json(const RatVec& v);
json int_mat_json(const IntMat& m);

json module_json(const FiniteQuadraticModule& D);
json weil_json(const WeilMatrix& W);
json qexp_json(const QExpansion& q);

}  // namespace weillift
