#pragma once

#include <map>
#include <string>
#include <vector>

#include "locint/linalg.hpp"
#include "locint/poset.hpp"

namespace locint {

/// Finite-dimensional quantized domain: an ambient space C^n with a nested
/// family of subspaces {H_alpha} indexed by a directed poset. The top level
/// spans the ambient space, so the union D coincides with H.
///
/// Each level carries an orthonormal basis V_alpha (ambient coordinates)
/// and its coordinates C_alpha = V_top^* V_alpha with respect to the top
/// basis. Operators are stored in top coordinates, so C_alpha is what
/// restrictions and projections are computed from.
///
/// Canonical form: every level's basis starts with the basis of its parent
/// (first lower cover), so along parent chains C_alpha is exactly [I; 0].
class QuantizedDomain {
 public:
  using Index = DirectedPoset::Index;

  /// Canonical construction. `level_dims` is indexed like poset.elements().
  /// Seeds (optional, per level) are orthonormal ambient vectors whose span
  /// the level must equal; unseeded levels are extended from lower levels
  /// and then the standard basis, in order.
  static QuantizedDomain build(DirectedPoset poset, Eigen::Index ambient_dim,
                               const std::vector<Eigen::Index>& level_dims,
                               const std::map<Index, Matrix>& seeds = {});

  /// Standard flag on a chain "1" <= ... <= "k": level i spans e_1..e_{d_i}.
  static QuantizedDomain standard_flag(const std::vector<Eigen::Index>& dims);

  /// Trivial filtration: a single level equal to C^n.
  static QuantizedDomain trivial(Eigen::Index n);

  /// Adopts explicit level bases verbatim (used by deserialization and by
  /// fault-injection tests). Only shapes are checked; call validate() for the
  /// structural invariants.
  static QuantizedDomain from_bases(DirectedPoset poset, Eigen::Index ambient_dim,
                                    std::vector<Matrix> level_bases);

  /// Adopts bases and their top coordinates without deriving anything;
  /// used when an assembly already knows both exactly.
  static QuantizedDomain from_parts(DirectedPoset poset, Eigen::Index ambient_dim,
                                    std::vector<Matrix> level_bases, std::vector<Matrix> coords);

  /// Copy with one level basis replaced but its stored coordinates kept.
  /// Simulates drift between stored bases and coordinates.
  QuantizedDomain with_corrupted_basis(Index level, Matrix basis) const;

  const DirectedPoset& poset() const noexcept { return poset_; }
  Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
  Eigen::Index dim(Index level) const { return bases_.at(level).cols(); }
  Eigen::Index dim(const std::string& level) const { return dim(poset_.index_of(level)); }
  Index top() const noexcept { return poset_.top(); }

  /// Orthonormal basis of H_alpha in ambient coordinates.
  const Matrix& basis(Index level) const { return bases_.at(level); }
  /// Coordinates of the level basis with respect to the top basis.
  const Matrix& coords(Index level) const { return coords_.at(level); }

  /// Isometric inclusion J_{beta,alpha}: level-alpha coordinates into
  /// level-beta coordinates. Exact [I; 0] when beta's basis extends alpha's.
  Matrix inclusion(Index alpha, Index beta) const;

  /// True when the first dim(alpha) basis vectors of beta equal alpha's
  /// basis bitwise.
  bool is_prefix(Index alpha, Index beta) const;

  /// Orthogonal projection P_alpha onto H_alpha, ambient coordinates.
  Matrix projection(Index level) const;
  Matrix projection(const std::string& level) const { return projection(poset_.index_of(level)); }
  /// Same projection expressed in top coordinates, C_alpha C_alpha^*.
  Matrix top_projection(Index level) const;

  /// The domain seen from level beta: branch poset, ambient H_beta in
  /// level-beta coordinates, levels given by the inclusions J_{beta,alpha}.
  QuantizedDomain branch_domain(Index beta) const;

  /// Bitwise equality of poset, bases and coordinates.
  friend bool operator==(const QuantizedDomain& a, const QuantizedDomain& b) {
    return a.poset_ == b.poset_ && a.ambient_dim_ == b.ambient_dim_ && bitwise_equal(a.bases_, b.bases_) &&
           bitwise_equal(a.coords_, b.coords_);
  }

 private:
  QuantizedDomain(DirectedPoset poset, Eigen::Index ambient_dim, std::vector<Matrix> bases,
                  std::vector<Matrix> coords);
  static std::vector<Matrix> derive_coords(const DirectedPoset& poset, const std::vector<Matrix>& bases);

  DirectedPoset poset_;
  Eigen::Index ambient_dim_;
  std::vector<Matrix> bases_;
  std::vector<Matrix> coords_;
};

struct InclusionCheck {
  std::string lower, upper;
  Eigen::Index lower_dim = 0, upper_dim = 0;
  double residual = 0.0;
  bool monotone = true;
  bool ok = true;
};

struct DomainDiagnostics {
  std::vector<InclusionCheck> inclusions;  // one per cover pair
  std::map<std::string, double> orthonormality_defect;
  std::map<std::string, double> coordinate_residual;  // |V_top C_alpha - V_alpha|
  std::vector<std::string> canonical_violations;      // parent prefix broken
  bool top_spans_ambient = true;
  std::vector<std::string> failures;  // human-readable, with error-code names

  bool ok() const { return failures.empty(); }
};

/// Reports every structural defect instead of throwing.
DomainDiagnostics validate(const QuantizedDomain& domain);

}  // namespace locint
