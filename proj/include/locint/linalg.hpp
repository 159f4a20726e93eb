#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace locint {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
/// Relative singular-value cutoff for rank decisions.
inline constexpr double kRank = 1e-10;
/// Residual threshold for subspace equality / containment.
inline constexpr double kEquality = 1e-9;
/// Orthonormality and nesting of constructed bases.
inline constexpr double kBasis = 1e-12;
/// Reducing-subspace (locally bounded) validation.
inline constexpr double kReducing = 1e-10;
}  // namespace tol

bool all_finite(const Matrix& m);

/// Largest singular value; 0 for empty matrices.
double operator_norm(const Matrix& m);

/// Orthonormal list of vectors spanning a subspace of C^ambient_dim,
/// stored as the columns of `vectors`.
struct SubspaceBasis {
  Eigen::Index ambient_dim = 0;
  Matrix vectors;

  Eigen::Index dim() const { return vectors.cols(); }
  /// max |V*V - I| entry.
  double orthonormality_defect() const;
};

/// Orthonormal basis of ker(map). Singular values below
/// rel_cutoff * max(sigma_max, scale) count as null (1 replaces a zero
/// reference). `scale` is the size the map would have if it were not
/// numerically zero, so a map that is pure rounding noise has a full kernel.
SubspaceBasis null_space_basis(const Matrix& map, double rel_cutoff = tol::kRank, double scale = 0.0);

enum class SubspaceRelation { Equal, AInsideB, BInsideA, Incomparable };
std::string_view to_string(SubspaceRelation r);

struct SubspaceComparison {
  SubspaceRelation relation = SubspaceRelation::Incomparable;
  /// max over basis vectors a of A of |(I - P_B) a|.
  double a_in_b_residual = 0.0;
  double b_in_a_residual = 0.0;
};

SubspaceComparison subspace_compare(const SubspaceBasis& a, const SubspaceBasis& b,
                                    double tol = tol::kEquality);

/// Modified Gram-Schmidt (two passes) of `candidates` against the columns of
/// `existing`; candidates whose residual norm falls below `drop` are skipped.
/// Stops once `target_cols` columns are available. Returns existing plus the
/// accepted new columns.
Matrix extend_orthonormal(const Matrix& existing, const Matrix& candidates,
                          Eigen::Index target_cols, double drop = 1e-10);

/// Orthonormal basis of the column span (rank-revealing, deterministic).
SubspaceBasis orthonormal_span(const Matrix& columns, Eigen::Index ambient_dim);

/// a * b with every column accumulated by the same fixed loop, so a column
/// of the result depends bitwise only on the matching column of b.
Matrix columnwise_product(const Matrix& a, const Matrix& b);

/// Same shapes and identical entries (no tolerance).
bool bitwise_equal(const Matrix& a, const Matrix& b);
bool bitwise_equal(const std::vector<Matrix>& a, const std::vector<Matrix>& b);

/// Column-major vectorization and its inverse.
Vector vectorize(const Matrix& m);
Matrix devectorize(const Eigen::Ref<const Vector>& v, Eigen::Index n);

/// Largest absolute entry; 0 for empty.
double max_abs(const Matrix& m);

}  // namespace locint
