#include "locint/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "locint/error.hpp"

namespace locint {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double SubspaceBasis::orthonormality_defect() const {
  if (vectors.cols() == 0) return 0.0;
  Matrix gram = vectors.adjoint() * vectors;
  gram -= Matrix::Identity(gram.rows(), gram.cols());
  return max_abs(gram);
}

SubspaceBasis null_space_basis(const Matrix& map, double rel_cutoff, double scale) {
  const Eigen::Index k = map.cols();
  SubspaceBasis out{k, Matrix(k, 0)};
  if (k == 0) return out;
  if (map.rows() == 0) {
    out.vectors = Matrix::Identity(k, k);
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(map, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double largest = sigma.size() > 0 ? sigma(0) : 0.0;
  const double reference = std::max(largest, scale);
  const double cutoff = rel_cutoff * (reference > 0.0 ? reference : 1.0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  out.vectors = svd.matrixV().rightCols(k - rank);
  return out;
}

std::string_view to_string(SubspaceRelation r) {
  switch (r) {
    case SubspaceRelation::Equal: return "Equal";
    case SubspaceRelation::AInsideB: return "AInsideB";
    case SubspaceRelation::BInsideA: return "BInsideA";
    case SubspaceRelation::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

namespace {

double containment_residual(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Vector r = a.col(j);
    if (b.cols() > 0) r -= b * (b.adjoint() * a.col(j));
    worst = std::max(worst, r.norm());
  }
  return worst;
}

}  // namespace

SubspaceComparison subspace_compare(const SubspaceBasis& a, const SubspaceBasis& b, double tol) {
  if (a.ambient_dim != b.ambient_dim)
    throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
  SubspaceComparison c;
  c.a_in_b_residual = containment_residual(a.vectors, b.vectors);
  c.b_in_a_residual = containment_residual(b.vectors, a.vectors);
  const bool a_in_b = c.a_in_b_residual <= tol;
  const bool b_in_a = c.b_in_a_residual <= tol;
  if (a_in_b && b_in_a)
    c.relation = SubspaceRelation::Equal;
  else if (a_in_b)
    c.relation = SubspaceRelation::AInsideB;
  else if (b_in_a)
    c.relation = SubspaceRelation::BInsideA;
  else
    c.relation = SubspaceRelation::Incomparable;
  return c;
}

Matrix extend_orthonormal(const Matrix& existing, const Matrix& candidates,
                          Eigen::Index target_cols, double drop) {
  const Eigen::Index n = existing.rows();
  std::vector<Vector> cols;
  for (Eigen::Index j = 0; j < existing.cols(); ++j) cols.emplace_back(existing.col(j));
  for (Eigen::Index j = 0; j < candidates.cols(); ++j) {
    if (static_cast<Eigen::Index>(cols.size()) >= target_cols) break;
    Vector v = candidates.col(j);
    const double scale = v.norm();
    if (scale == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : cols) v -= q * q.dot(v);
    const double r = v.norm();
    if (r <= drop * std::max(1.0, scale)) continue;
    cols.emplace_back(v / r);
  }
  Matrix out(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = cols[j];
  return out;
}

SubspaceBasis orthonormal_span(const Matrix& columns, Eigen::Index ambient_dim) {
  SubspaceBasis out{ambient_dim, Matrix(ambient_dim, 0)};
  if (columns.cols() == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double largest = sigma(0);
  if (largest == 0.0) return out;
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol::kRank * largest) ++rank;
  out.vectors = svd.matrixU().leftCols(rank);
  return out;
}

Matrix columnwise_product(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Complex c = b(k, j);
      for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * c;
    }
  return out;
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool bitwise_equal(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!bitwise_equal(a[i], b[i])) return false;
  return true;
}

Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix devectorize(const Eigen::Ref<const Vector>& v, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = v(j * n + i);
  return m;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace locint
