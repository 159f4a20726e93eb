#include "locint/random_instances.hpp"

#include "locint/commutant.hpp"

namespace locint {

Matrix Rng::matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = 2.0 * unit_square() - Complex(1.0, 1.0);
  return m;
}

Vector Rng::vector(Eigen::Index n) { return matrix(n, 1).col(0); }

Matrix Rng::unitary(Eigen::Index n) {
  if (n == 0) return Matrix(0, 0);
  Eigen::HouseholderQR<Matrix> qr(matrix(n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

QuantizedDomain random_domain(Rng& rng, const DirectedPoset& poset, Eigen::Index max_dim,
                              Eigen::Index min_top_dim) {
  const std::size_t m = poset.size();
  const auto top = poset.top();
  const Eigen::Index n = static_cast<Eigen::Index>(
      rng.between(static_cast<std::size_t>(min_top_dim), static_cast<std::size_t>(max_dim)));
  std::vector<Eigen::Index> dims(m, 0);
  dims[top] = n;
  // Walk downward: each level gets a dimension no larger than every level
  // above it.
  auto order = poset.linear_extension();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it == top) continue;
    Eigen::Index cap = n;
    for (std::size_t b = 0; b < m; ++b)
      if (poset.less(*it, b)) cap = std::min(cap, dims[b]);
    dims[*it] = static_cast<Eigen::Index>(rng.between(0, static_cast<std::size_t>(cap)));
  }

  std::map<DirectedPoset::Index, Matrix> seeds;
  if (rng.coin()) {
    const Matrix w = rng.unitary(n);
    // Minimal levels take a prefix of w; every other level below the top
    // extends its parent's seed in random directions.
    for (auto beta : order) {
      if (beta == top) continue;
      const auto parent = poset.parent(beta);
      if (parent >= m)
        seeds[beta] = w.leftCols(dims[beta]);
      else
        seeds[beta] = extend_orthonormal(seeds.at(parent), rng.matrix(n, n), dims[beta]);
    }
  }
  return QuantizedDomain::build(poset, n, dims, seeds);
}

DirectedPoset random_poset(Rng& rng, const InstanceBounds& bounds) {
  const std::size_t choices = bounds.max_chain + (bounds.allow_diamond ? 1 : 0);
  const std::size_t pick = rng.between(1, choices);
  if (pick > bounds.max_chain) return DirectedPoset::diamond();
  return DirectedPoset::chain(pick);
}

DirectIntegralDomain random_direct_integral(Rng& rng, const InstanceBounds& bounds) {
  const DirectedPoset poset = random_poset(rng, bounds);
  const std::size_t atoms = rng.between(1, bounds.max_atoms);
  std::vector<QuantizedDomain> fibers;
  for (std::size_t p = 0; p < atoms; ++p) fibers.push_back(random_domain(rng, poset, bounds.max_fiber_dim));
  std::vector<std::string> labels;
  std::vector<double> weights;
  for (std::size_t p = 1; p <= atoms; ++p) {
    labels.push_back(std::to_string(p));
    weights.push_back(bounds.counting_measure ? 1.0 : 0.25 + 2.0 * rng.uniform());
  }
  return DirectIntegralDomain(AtomicMeasureSpace(std::move(labels), std::move(weights)), std::move(fibers));
}

LocalOperator random_local_operator(Rng& rng, std::shared_ptr<const QuantizedDomain> domain) {
  const OperatorSubspace ambient = ambient_basis(*domain);
  const Eigen::Index n = ambient.n;
  Vector coeffs(ambient.dim());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) = 2.0 * rng.unit_square() - Complex(1.0, 1.0);
  Vector v = ambient.span.vectors * coeffs;
  return LocalOperator::from_top(std::move(domain), devectorize(v, n));
}

DecomposableOperator random_decomposable(Rng& rng, std::shared_ptr<const DirectIntegralDomain> dint) {
  std::vector<LocalOperator> fibers;
  for (const auto& f : dint->fibers())
    fibers.push_back(random_local_operator(rng, std::make_shared<const QuantizedDomain>(f)));
  return DecomposableOperator::from_fibers(std::move(dint), std::move(fibers));
}

std::vector<Complex> random_function(Rng& rng, std::size_t atoms) {
  std::vector<Complex> f;
  for (std::size_t p = 0; p < atoms; ++p) f.push_back(2.0 * rng.unit_square() - Complex(1.0, 1.0));
  return f;
}

FiberField random_field(Rng& rng, const DirectIntegralDomain& dint, DirectedPoset::Index level) {
  FiberField x{level, {}};
  for (const auto& f : dint.fibers()) x.components.push_back(rng.vector(f.dim(level)));
  return x;
}

}  // namespace locint
