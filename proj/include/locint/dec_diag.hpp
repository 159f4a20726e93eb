#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locint/direct_integral.hpp"
#include "locint/local_operator.hpp"

namespace locint {

using DintPtr = std::shared_ptr<const DirectIntegralDomain>;

/// Operator acting fiberwise, (Tu)(p) = T_p u(p). The fibers are the source
/// of truth; the assembled operator on the assembled domain is derived.
class DecomposableOperator {
 public:
  static DecomposableOperator from_fibers(DintPtr dint, std::vector<LocalOperator> fibers);

  const DintPtr& dint() const noexcept { return dint_; }
  const std::vector<LocalOperator>& fibers() const noexcept { return fibers_; }
  const LocalOperator& fiber(std::size_t p) const { return fibers_.at(p); }
  const LocalOperator& assembled() const noexcept { return assembled_; }

 private:
  DecomposableOperator(DintPtr dint, std::vector<LocalOperator> fibers, LocalOperator assembled)
      : dint_(std::move(dint)), fibers_(std::move(fibers)), assembled_(std::move(assembled)) {}

  DintPtr dint_;
  std::vector<LocalOperator> fibers_;
  LocalOperator assembled_;
};

/// Scalar-fiber operator T_p = f(p) Id.
class DiagonalizableOperator {
 public:
  /// `f` indexed like the atoms of the measure space.
  static DiagonalizableOperator from_function(DintPtr dint, std::vector<Complex> f);

  const std::vector<Complex>& function() const noexcept { return f_; }
  const DecomposableOperator& as_decomposable() const noexcept { return dec_; }
  const DintPtr& dint() const noexcept { return dec_.dint(); }
  /// max_p |f(p)|.
  double sup_norm() const;

 private:
  DiagonalizableOperator(std::vector<Complex> f, DecomposableOperator dec)
      : f_(std::move(f)), dec_(std::move(dec)) {}

  std::vector<Complex> f_;
  DecomposableOperator dec_;
};

/// Block-diagonal placement of per-atom top matrices into assembled top
/// coordinates.
Matrix block_diagonal(const DirectIntegralDomain& dint, const std::vector<Matrix>& per_atom);

/// Componentwise T_{alpha,p} u(p).
FiberField apply(const DecomposableOperator& t, const FiberField& u);
/// Same action through the assembled matrix, for cross-checking.
FiberField apply_assembled(const DecomposableOperator& t, const FiberField& u);

struct NormProfileEntry {
  std::string level;
  double formula = 0.0;    // max_p |T_p restricted to H_{alpha,p}|
  double assembled = 0.0;  // |T_alpha| of the assembled operator
  double difference = 0.0;
};

std::vector<NormProfileEntry> dec_norm_profile(const DecomposableOperator& t);

/// Bounded extension to the completion; at finite scale, the assembled top
/// matrix.
Matrix embed_phi(const DiagonalizableOperator& t);

/// Recovers the fiber family when the operator is block-diagonal across
/// atoms at every level (cross-atom blocks within tol).
std::optional<std::vector<LocalOperator>> detect_decomposable(const DirectIntegralDomain& dint,
                                                              const LocalOperator& op,
                                                              double tol = tol::kReducing);

DecomposableOperator dec_add(const DecomposableOperator& t, const DecomposableOperator& s);
DecomposableOperator dec_scale(Complex lambda, const DecomposableOperator& t);
DecomposableOperator dec_compose(const DecomposableOperator& t, const DecomposableOperator& s);
DecomposableOperator dec_adjoint(const DecomposableOperator& t);

}  // namespace locint
