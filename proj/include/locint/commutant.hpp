#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "locint/dec_diag.hpp"
#include "locint/linalg.hpp"
#include "locint/report.hpp"

namespace locint {

/// Linear span of n x n operators, coordinatized by column-major
/// vectorization; `span` holds an orthonormal basis of the span in C^{n^2}
/// (Frobenius inner product).
struct OperatorSubspace {
  Eigen::Index n = 0;
  SubspaceBasis span;

  Eigen::Index dim() const { return span.dim(); }
  /// Basis elements as matrices.
  std::vector<Matrix> elements() const;
  /// |vec(m) - P vec(m)|.
  double distance(const Matrix& m) const;
};

OperatorSubspace full_algebra(Eigen::Index n);
OperatorSubspace span_of(const std::vector<Matrix>& operators, Eigen::Index n);

/// All top matrices commuting with every level projection (equivalently,
/// for which every level is reducing), as a null-space problem.
OperatorSubspace ambient_basis(const QuantizedDomain& domain);

/// {T in ambient : T S_k = S_k T for all k}. Constraints are imposed one
/// generator at a time, shrinking the coordinate space as it goes.
OperatorSubspace commutant(const std::vector<Matrix>& generators, const OperatorSubspace& ambient);
OperatorSubspace double_commutant(const std::vector<Matrix>& generators, const OperatorSubspace& ambient);

SubspaceComparison compare(const OperatorSubspace& a, const OperatorSubspace& b,
                           double tol = tol::kEquality);

/// Worst distance of an element's adjoint from the span.
double adjoint_closure_residual(const OperatorSubspace& s);

/// DEC: block-diagonal placement of each fiber's ambient basis.
OperatorSubspace dec_span(const DirectIntegralDomain& dint);
/// DIAG generators: indicator of each atom times the fiber identity.
std::vector<Matrix> diag_generators(const DirectIntegralDomain& dint);
OperatorSubspace diag_span(const DirectIntegralDomain& dint);

/// DEC_beta: decomposable operators on the level-beta space for which every
/// level below beta reduces; level-beta coordinates.
OperatorSubspace level_dec_span(const DirectIntegralDomain& dint, DirectedPoset::Index beta);

CheckReport verify_dec_eq_diag_commutant(const DirectIntegralDomain& dint, double tol = tol::kEquality);

struct ProjectiveOptions {
  std::uint64_t seed = 0;
  double tol = tol::kEquality;
  /// Extra level families {T_alpha} whose compatibility is checked in (ii);
  /// used to probe the check with injected faults.
  std::vector<std::vector<Matrix>> probe_families;
};

CheckReport verify_dec_projective_system(const DirectIntegralDomain& dint, const ProjectiveOptions& opts = {});

}  // namespace locint
