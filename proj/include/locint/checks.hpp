#pragma once

#include <cstdint>

#include "locint/commutant.hpp"
#include "locint/dec_diag.hpp"
#include "locint/direct_integral.hpp"
#include "locint/local_operator.hpp"
#include "locint/random_instances.hpp"
#include "locint/report.hpp"

namespace locint {

/// Tolerances of the property checks below.
namespace check_tol {
inline constexpr double kNormFormula = 1e-10;
inline constexpr double kStarSquare = 1e-8;  // relative to max(1, p(T)^2)
inline constexpr double kStar = 1e-10;
inline constexpr double kMonotone = 1e-12;
inline constexpr double kDefect = 1e-12;
inline constexpr double kEmbedding = 1e-12;
inline constexpr double kContainment = 1e-9;
}  // namespace check_tol

/// |assembled level norm - max_p fiber level norm| at every level.
CheckReport check_norm_formula(const DecomposableOperator& t);

/// p(T*) = p(T), p(T*T) = p(T)^2, p(TS) <= p(T)p(S), p(T+S) <= p(T)+p(S)
/// at every level, and p_alpha <= p_beta along the order.
CheckReport check_seminorm_laws(const LocalOperator& t, const LocalOperator& s);

/// Longest chain through `level`: parents downward, first upper covers upward.
std::vector<DirectedPoset::Index> chain_through(const DirectedPoset& poset, DirectedPoset::Index level);

/// Defect profile of a field along a chain through its level: nonincreasing,
/// zero at the field's level (bitwise when that level is a prefix of the top
/// in every fiber) and agreeing with the assembled computation.
CheckReport check_defect_profile(const DirectIntegralDomain& dint, const FiberField& x);

/// Interchange of levels and integrals, and for counting measures the
/// coincidence of the direct integral with the plain direct sum (bitwise
/// concatenation and inner products).
CheckReport check_direct_sum(const DirectIntegralDomain& dint, const FiberField& x, const FiberField& y);

/// DEC inside DIAG' and DIAG inside DEC'.
CheckReport check_containments(const DirectIntegralDomain& dint);

/// Phi: f -> diag(f(p) Id) is multiplicative, *-preserving, injective on the
/// atoms with nonzero fibers, and has commutative image.
CheckReport check_embedding(const DintPtr& dint, const std::vector<Complex>& f, const std::vector<Complex>& g);

/// Two unit atoms, each carrying the standard flag C^1 in C^2 on the chain
/// "1" <= "2". Its ambient algebra has dimension 8.
DirectIntegralDomain two_atom_flag_instance();

/// Every check above on one random instance drawn from `rng`.
CheckReport instance_battery(Rng& rng, const InstanceBounds& bounds);

/// Copies residuals, values and dimensions of `part` into `into` under
/// "<prefix>." keys and propagates failures.
void merge_into(CheckReport& into, const CheckReport& part, const std::string& prefix);

}  // namespace locint
