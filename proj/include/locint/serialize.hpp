#pragma once

#include <json.hpp>

#include "locint/dec_diag.hpp"
#include "locint/direct_integral.hpp"
#include "locint/linalg.hpp"
#include "locint/local_operator.hpp"
#include "locint/poset.hpp"
#include "locint/quantized_domain.hpp"
#include "locint/report.hpp"

namespace locint {

using json = nlohmann::json;

/// Complex scalars are [re, im]; matrices are {"rows", "cols", "entries"}
/// with entries in row-major order; vectors are arrays of complex scalars.
json to_json(Complex z);
Complex complex_from_json(const json& j);
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// {"elements": [...], "covers": [[a, b], ...]}; the order is the
/// transitive closure of the covers.
json to_json(const DirectedPoset& p);
DirectedPoset poset_from_json(const json& j);

/// {"poset": ..., "ambient_dim": n, "levels": {label: {"dim": d, "basis": [[z, ...], ...], "coords"?: <matrix>}}}.
/// Levels without "basis" are built canonically; explicit bases that are
/// already canonical are adopted bit for bit. "coords" (top coordinates)
/// is written unless it is exactly [I; 0] on a prefix of the top basis.
json to_json(const QuantizedDomain& d);
QuantizedDomain domain_from_json(const json& j, const DirectedPoset* shared_poset = nullptr);

/// {"measure": {"atoms": [...], "weights": {atom: w}}, "fibers": {atom: <domain>}}.
/// Fibers may omit "poset" when the object carries a shared "poset".
json to_json(const DirectIntegralDomain& d);
DirectIntegralDomain direct_integral_from_json(const json& j);

/// {"top_matrix": <matrix>} or {"blocks": {label: <matrix>}}; "domain_ref"
/// is resolved by the caller.
json to_json(const LocalOperator& op);
LocalOperator local_operator_from_json(const json& j, std::shared_ptr<const QuantizedDomain> domain);

/// {"fibers": {atom: <local operator>}}.
json to_json(const DecomposableOperator& op);
DecomposableOperator decomposable_from_json(const json& j, DintPtr dint);

/// {"f": {atom: [re, im]}}.
json to_json(const DiagonalizableOperator& op);
DiagonalizableOperator diagonalizable_from_json(const json& j, DintPtr dint);

json to_json(const CheckReport& r);
CheckReport check_report_from_json(const json& j);

/// Doubles that JSON cannot carry (inf, nan) are written as strings.
json number_to_json(double v);
double number_from_json(const json& j);

}  // namespace locint
