#include "locint/quantized_domain.hpp"

#include <algorithm>
#include <limits>

#include "locint/error.hpp"

namespace locint {

namespace {

constexpr double kSeedTolerance = 1e-10;

double column_residual(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Vector r = a.col(j);
    if (b.cols() > 0) r -= b * (b.adjoint() * a.col(j));
    worst = std::max(worst, r.norm());
  }
  return worst;
}

bool prefix_equal(const Matrix& outer, const Matrix& inner) {
  if (inner.cols() > outer.cols() || inner.rows() != outer.rows()) return false;
  return outer.leftCols(inner.cols()) == inner;
}

Matrix identity_prefix(Eigen::Index rows, Eigen::Index cols) {
  return Matrix::Identity(rows, cols);
}

}  // namespace

QuantizedDomain::QuantizedDomain(DirectedPoset poset, Eigen::Index ambient_dim,
                                 std::vector<Matrix> bases, std::vector<Matrix> coords)
    : poset_(std::move(poset)),
      ambient_dim_(ambient_dim),
      bases_(std::move(bases)),
      coords_(std::move(coords)) {}

std::vector<Matrix> QuantizedDomain::derive_coords(const DirectedPoset& poset, const std::vector<Matrix>& bases) {
  const Matrix& vt = bases[poset.top()];
  std::vector<Matrix> coords(bases.size());
  for (Index i : poset.linear_extension()) {
    const Matrix& v = bases[i];
    if (prefix_equal(vt, v)) {
      coords[i] = identity_prefix(vt.cols(), v.cols());
      continue;
    }
    coords[i] = vt.adjoint() * v;
    // Columns inherited from the parent reuse the parent's coordinates.
    const Index parent = poset.parent(i);
    if (parent < poset.size() && prefix_equal(v, bases[parent]) && coords[parent].rows() == vt.cols())
      coords[i].leftCols(bases[parent].cols()) = coords[parent];
  }
  return coords;
}

QuantizedDomain QuantizedDomain::build(DirectedPoset poset, Eigen::Index ambient_dim,
                                       const std::vector<Eigen::Index>& level_dims,
                                       const std::map<Index, Matrix>& seeds) {
  const std::size_t m = poset.size();
  if (ambient_dim < 0) throw Error(ErrorCode::DimensionMismatch, "negative ambient dimension");
  if (level_dims.size() != m)
    throw Error(ErrorCode::DimensionMismatch, "one dimension per poset element required");
  for (auto [a, b] : poset.cover_pairs())
    if (level_dims[a] > level_dims[b])
      throw Error(ErrorCode::NonMonotoneDims, poset.label(a) + " <= " + poset.label(b) + " but dim " +
                                                  std::to_string(level_dims[a]) + " > " +
                                                  std::to_string(level_dims[b]));
  for (std::size_t i = 0; i < m; ++i)
    if (level_dims[i] < 0 || level_dims[i] > ambient_dim)
      throw Error(ErrorCode::DimensionMismatch,
                  "level " + poset.label(i) + " dimension outside [0, ambient_dim]");
  if (level_dims[poset.top()] != ambient_dim)
    throw Error(ErrorCode::NonMonotoneDims, "top level must span the ambient space");

  for (const auto& [level, seed] : seeds) {
    if (level >= m) throw Error(ErrorCode::UnknownElement, "seed for unknown level");
    if (seed.rows() != ambient_dim || seed.cols() != level_dims[level])
      throw Error(ErrorCode::DimensionMismatch, "seed basis shape for level " + poset.label(level));
    if (!all_finite(seed)) throw Error(ErrorCode::NotOrthonormal, "non-finite seed entries");
    SubspaceBasis sb{ambient_dim, seed};
    if (sb.orthonormality_defect() > kSeedTolerance)
      throw Error(ErrorCode::NotOrthonormal, "seed basis for level " + poset.label(level));
  }

  std::vector<Matrix> bases(m);
  for (Index beta : poset.linear_extension()) {
    const Index parent = poset.parent(beta);
    Matrix base = parent < m ? bases[parent] : Matrix(ambient_dim, 0);
    auto seed = seeds.find(beta);
    Matrix candidates;
    if (seed != seeds.end()) {
      candidates = seed->second;
    } else {
      auto lower = poset.below(beta);
      Eigen::Index cols = ambient_dim;
      for (Index a : lower) cols += bases[a].cols();
      candidates.resize(ambient_dim, cols);
      Eigen::Index at = 0;
      for (Index a : lower) {
        candidates.middleCols(at, bases[a].cols()) = bases[a];
        at += bases[a].cols();
      }
      candidates.rightCols(ambient_dim) = Matrix::Identity(ambient_dim, ambient_dim);
    }
    Matrix v = extend_orthonormal(base, candidates, level_dims[beta]);
    if (v.cols() != level_dims[beta])
      throw Error(ErrorCode::InclusionViolation,
                  "cannot extend lower levels to dimension of " + poset.label(beta));
    if (seed != seeds.end() && column_residual(seed->second, v) > kSeedTolerance)
      throw Error(ErrorCode::InclusionViolation,
                  "seed basis of " + poset.label(beta) + " does not contain its lower levels");
    for (Index a : poset.below(beta))
      if (column_residual(bases[a], v) > kSeedTolerance)
        throw Error(ErrorCode::InclusionViolation,
                    "level " + poset.label(a) + " is not inside level " + poset.label(beta));
    bases[beta] = std::move(v);
  }

  const Index top = poset.top();
  auto coords = derive_coords(poset, bases);
  // Levels off the top's parent chain are re-expressed through their
  // coordinates so that V_alpha == V_top C_alpha holds bitwise.
  for (std::size_t i = 0; i < m; ++i)
    if (!prefix_equal(bases[top], bases[i])) bases[i] = columnwise_product(bases[top], coords[i]);
  return QuantizedDomain(std::move(poset), ambient_dim, std::move(bases), std::move(coords));
}

QuantizedDomain QuantizedDomain::standard_flag(const std::vector<Eigen::Index>& dims) {
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "empty flag");
  return build(DirectedPoset::chain(dims.size()), dims.back(), dims);
}

QuantizedDomain QuantizedDomain::trivial(Eigen::Index n) {
  return build(DirectedPoset::chain(1), n, {n});
}

QuantizedDomain QuantizedDomain::from_bases(DirectedPoset poset, Eigen::Index ambient_dim,
                                            std::vector<Matrix> level_bases) {
  if (level_bases.size() != poset.size())
    throw Error(ErrorCode::DimensionMismatch, "one basis per poset element required");
  for (std::size_t i = 0; i < level_bases.size(); ++i) {
    const Matrix& b = level_bases[i];
    if (b.rows() != ambient_dim || b.cols() > ambient_dim)
      throw Error(ErrorCode::DimensionMismatch, "basis shape for level " + poset.label(i));
    if (!all_finite(b)) throw Error(ErrorCode::NotOrthonormal, "non-finite basis entries");
  }
  auto coords = derive_coords(poset, level_bases);
  return QuantizedDomain(std::move(poset), ambient_dim, std::move(level_bases), std::move(coords));
}

QuantizedDomain QuantizedDomain::from_parts(DirectedPoset poset, Eigen::Index ambient_dim,
                                            std::vector<Matrix> level_bases,
                                            std::vector<Matrix> coords) {
  if (level_bases.size() != poset.size() || coords.size() != poset.size())
    throw Error(ErrorCode::DimensionMismatch, "one basis and one coordinate block per level required");
  const Eigen::Index top_dim = level_bases[poset.top()].cols();
  for (std::size_t i = 0; i < level_bases.size(); ++i)
    if (level_bases[i].rows() != ambient_dim || coords[i].rows() != top_dim ||
        coords[i].cols() != level_bases[i].cols())
      throw Error(ErrorCode::DimensionMismatch, "basis/coordinate shape for level " + poset.label(i));
  return QuantizedDomain(std::move(poset), ambient_dim, std::move(level_bases), std::move(coords));
}

QuantizedDomain QuantizedDomain::with_corrupted_basis(Index level, Matrix basis) const {
  QuantizedDomain copy = *this;
  if (basis.rows() != bases_.at(level).rows() || basis.cols() != bases_.at(level).cols())
    throw Error(ErrorCode::DimensionMismatch, "replacement basis shape");
  copy.bases_[level] = std::move(basis);
  return copy;
}

bool QuantizedDomain::is_prefix(Index alpha, Index beta) const {
  return prefix_equal(bases_.at(beta), bases_.at(alpha));
}

Matrix QuantizedDomain::inclusion(Index alpha, Index beta) const {
  if (!poset_.leq(alpha, beta))
    throw Error(ErrorCode::LevelIncomparable, poset_.label(alpha) + " is not below " + poset_.label(beta));
  if (is_prefix(alpha, beta)) return identity_prefix(dim(beta), dim(alpha));
  return coords_[beta].adjoint() * coords_[alpha];
}

Matrix QuantizedDomain::projection(Index level) const {
  const Matrix& v = bases_.at(level);
  if (v.cols() == 0) return Matrix::Zero(ambient_dim_, ambient_dim_);
  return v * v.adjoint();
}

Matrix QuantizedDomain::top_projection(Index level) const {
  const Matrix& c = coords_.at(level);
  if (c.cols() == 0) return Matrix::Zero(c.rows(), c.rows());
  return c * c.adjoint();
}

QuantizedDomain QuantizedDomain::branch_domain(Index beta) const {
  DirectedPoset sub = poset_.branch(beta);
  std::vector<Matrix> bases;
  for (const auto& label : sub.elements()) bases.push_back(inclusion(poset_.index_of(label), beta));
  return from_bases(std::move(sub), dim(beta), std::move(bases));
}

DomainDiagnostics validate(const QuantizedDomain& domain) {
  DomainDiagnostics d;
  const auto& poset = domain.poset();
  const auto top = domain.top();
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const std::string& label = poset.label(i);
    const double defect = SubspaceBasis{domain.ambient_dim(), domain.basis(i)}.orthonormality_defect();
    d.orthonormality_defect[label] = defect;
    if (defect > tol::kBasis) d.failures.push_back("NotOrthonormal: level " + label);

    double drift = 0.0;
    if (domain.coords(i).rows() == domain.basis(top).cols())
      drift = max_abs(columnwise_product(domain.basis(top), domain.coords(i)) - domain.basis(i));
    else
      drift = std::numeric_limits<double>::infinity();
    d.coordinate_residual[label] = drift;
    if (drift > tol::kBasis)
      d.failures.push_back("InclusionViolation: level " + label + " basis disagrees with its coordinates");

    const auto parent = poset.parent(i);
    // Storage convention only; nesting itself is checked on the cover pairs.
    if (parent < poset.size() && !domain.is_prefix(parent, i)) d.canonical_violations.push_back(label);
  }
  for (auto [a, b] : poset.cover_pairs()) {
    InclusionCheck c;
    c.lower = poset.label(a);
    c.upper = poset.label(b);
    c.lower_dim = domain.dim(a);
    c.upper_dim = domain.dim(b);
    c.monotone = c.lower_dim <= c.upper_dim;
    c.residual = column_residual(domain.basis(a), domain.basis(b));
    c.ok = c.monotone && c.residual <= tol::kBasis;
    if (!c.monotone) d.failures.push_back("NonMonotoneDims: " + c.lower + " <= " + c.upper);
    if (c.residual > tol::kBasis)
      d.failures.push_back("InclusionViolation: " + c.lower + " -> " + c.upper);
    d.inclusions.push_back(std::move(c));
  }
  d.top_spans_ambient = domain.dim(top) == domain.ambient_dim();
  if (!d.top_spans_ambient) d.failures.push_back("DimensionMismatch: top level does not span the ambient space");
  return d;
}

}  // namespace locint
