#pragma once

#include <vector>

#include <Eigen/LU>

#include "locint/linalg.hpp"

namespace locint::testing {

/// Kernel of T -> (T S_k - S_k T)_k over all n x n matrices, by full-pivoting
/// LU on the explicit n^2-column system. Independent of the library's
/// QR/SVD commutant path.
inline Matrix oracle_kernel(const std::vector<Matrix>& constraints, Eigen::Index n) {
  Matrix map(static_cast<Eigen::Index>(constraints.size()) * n * n, n * n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    Matrix e = Matrix::Zero(n, n);
    e(k % n, k / n) = 1.0;
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      const Matrix d = e * constraints[c] - constraints[c] * e;
      map.block(static_cast<Eigen::Index>(c) * n * n, k, n * n, 1) = Eigen::Map<const Vector>(d.data(), n * n);
    }
  }
  Eigen::FullPivLU<Matrix> lu(map);
  lu.setThreshold(1e-10);
  return lu.kernel();
}

}  // namespace locint::testing
