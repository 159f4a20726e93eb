#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locint/linalg.hpp"
#include "locint/quantized_domain.hpp"

namespace locint {

/// Locally bounded operator on a finite quantized domain.
///
/// Stored as its action on the top level in top coordinates; the projective
/// family {T_alpha} is derived once at construction. Every level is
/// reducing, i.e. T commutes with each level projection.
class LocalOperator {
 public:
  using Index = DirectedPoset::Index;
  using DomainPtr = std::shared_ptr<const QuantizedDomain>;

  /// Validates the reducing condition at every level.
  static LocalOperator from_top(DomainPtr domain, Matrix top_matrix);
  /// Validates nesting T_beta J = J T_alpha (and the adjoint relation) for
  /// all alpha <= beta, then assembles from the top block.
  static LocalOperator from_blocks(DomainPtr domain, const std::vector<Matrix>& blocks);

  static LocalOperator identity(DomainPtr domain);
  static LocalOperator zero(DomainPtr domain);

  const DomainPtr& domain() const noexcept { return domain_; }
  const Matrix& top_matrix() const noexcept { return top_; }

  /// T_alpha in level-alpha coordinates.
  const Matrix& restrict(Index level) const { return blocks_.at(level); }
  const Matrix& restrict(const std::string& level) const {
    return restrict(domain_->poset().index_of(level));
  }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

  /// Top matrix in ambient coordinates.
  Matrix ambient_matrix() const;

 private:
  LocalOperator(DomainPtr domain, Matrix top, std::vector<Matrix> blocks)
      : domain_(std::move(domain)), top_(std::move(top)), blocks_(std::move(blocks)) {}

  DomainPtr domain_;
  Matrix top_;
  std::vector<Matrix> blocks_;
};

/// Worst reducing residual over all levels, with the offending level.
struct ReducingResidual {
  double residual = 0.0;
  DirectedPoset::Index level = 0;
};
ReducingResidual reducing_residual(const QuantizedDomain& domain, const Matrix& top_matrix);

/// phi_{alpha,beta}: restriction of a level-beta block to level alpha,
/// J^* T_beta J.
Matrix restrict_block(const QuantizedDomain& domain, DirectedPoset::Index alpha,
                      DirectedPoset::Index beta, const Matrix& block_beta);

/// Max over alpha <= beta of |phi_{alpha,beta}(T_beta) - T_alpha|.
double family_compatibility_residual(const QuantizedDomain& domain, const std::vector<Matrix>& family);

struct Seminorm {
  enum class Kind { Uniform, Strong, Weak };
  Kind kind = Kind::Uniform;
  DirectedPoset::Index level = 0;  // uniform
  Vector u, v;                     // strong: u; weak: u, v (top coordinates)

  static Seminorm uniform(DirectedPoset::Index level) { return {Kind::Uniform, level, {}, {}}; }
  static Seminorm strong(Vector u) { return {Kind::Strong, 0, std::move(u), {}}; }
  static Seminorm weak(Vector u, Vector v) { return {Kind::Weak, 0, std::move(u), std::move(v)}; }
};

struct SeminormValue {
  double value = 0.0;
  /// Level the seminorm was evaluated in (smallest level holding the vectors).
  DirectedPoset::Index level = 0;
};

SeminormValue seminorm(const LocalOperator& t, const Seminorm& kind);
/// p_alpha(T) = |T_alpha|.
double uniform_seminorm(const LocalOperator& t, DirectedPoset::Index level);

/// Smallest level (first minimal, in element order) containing the vector.
DirectedPoset::Index smallest_level_containing(const QuantizedDomain& domain, const Vector& top_coords);

LocalOperator add(const LocalOperator& t, const LocalOperator& s);
LocalOperator scale(Complex lambda, const LocalOperator& t);
LocalOperator compose(const LocalOperator& t, const LocalOperator& s);
LocalOperator adjoint(const LocalOperator& t);

/// Operator on the N-indexed standard flag given by rules for the level
/// dimensions and the level blocks; realizes unbounded examples through
/// finite truncations.
struct LazyChainOperator {
  std::string name;
  std::function<Eigen::Index(int)> dim_rule;  // n -> d_n, strictly increasing, n >= 1
  std::function<Matrix(int)> block_rule;      // n -> T_n, d_n x d_n
  int truncation_depth = 1;
};

/// Registered rules: "diag_n" (S e_k = k e_k), "identity", "shift_pairs"
/// (swap within consecutive coordinate pairs, d_n = 2n).
LazyChainOperator lazy_rule(const std::string& name, int depth);
std::vector<std::string> lazy_rule_names();

/// Operator on the standard flag (d_1, ..., d_n).
LocalOperator lazy_truncate(const LazyChainOperator& op, int n);

}  // namespace locint
