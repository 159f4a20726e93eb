#include "locint/local_operator.hpp"

#include <algorithm>
#include <limits>

#include "locint/error.hpp"

namespace locint {

namespace {

std::vector<Matrix> derive_blocks(const QuantizedDomain& domain, const Matrix& top) {
  std::vector<Matrix> blocks;
  blocks.reserve(domain.poset().size());
  for (std::size_t level = 0; level < domain.poset().size(); ++level) {
    const Matrix& c = domain.coords(level);
    blocks.push_back(c.adjoint() * top * c);
  }
  return blocks;
}

void require_same_domain(const LocalOperator& t, const LocalOperator& s) {
  if (t.domain() != s.domain() && !(*t.domain() == *s.domain()))
    throw Error(ErrorCode::DomainMismatch, "operators live on different domains");
}

}  // namespace

ReducingResidual reducing_residual(const QuantizedDomain& domain, const Matrix& top_matrix) {
  ReducingResidual worst;
  const Matrix adj = top_matrix.adjoint();
  for (std::size_t level = 0; level < domain.poset().size(); ++level) {
    const Matrix q = domain.top_projection(level);
    const Matrix tq = top_matrix * q;
    const Matrix aq = adj * q;
    const double r = std::max((q * tq - tq).norm(), (q * aq - aq).norm());
    if (r > worst.residual) worst = {r, level};
  }
  return worst;
}

LocalOperator LocalOperator::from_top(DomainPtr domain, Matrix top_matrix) {
  const Eigen::Index n = domain->dim(domain->top());
  if (top_matrix.rows() != n || top_matrix.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "top matrix must be square of the top dimension");
  if (!all_finite(top_matrix)) throw Error(ErrorCode::InvalidArgument, "non-finite operator entries");
  const auto worst = reducing_residual(*domain, top_matrix);
  if (worst.residual > tol::kReducing)
    throw Error(ErrorCode::NotLocallyBounded, "level " + domain->poset().label(worst.level) +
                                                  " is not reducing (residual " +
                                                  std::to_string(worst.residual) + ")");
  auto blocks = derive_blocks(*domain, top_matrix);
  return LocalOperator(std::move(domain), std::move(top_matrix), std::move(blocks));
}

LocalOperator LocalOperator::from_blocks(DomainPtr domain, const std::vector<Matrix>& blocks) {
  const auto& poset = domain->poset();
  if (blocks.size() != poset.size())
    throw Error(ErrorCode::BlockIncompatible, "one block per level required");
  for (std::size_t level = 0; level < poset.size(); ++level) {
    const Eigen::Index d = domain->dim(level);
    if (blocks[level].rows() != d || blocks[level].cols() != d)
      throw Error(ErrorCode::BlockIncompatible, "block shape at level " + poset.label(level));
  }
  for (auto [alpha, beta] : poset.order_pairs()) {
    if (alpha == beta) continue;
    const Matrix j = domain->inclusion(alpha, beta);
    const double forward = (blocks[beta] * j - j * blocks[alpha]).norm();
    const double backward = (blocks[beta].adjoint() * j - j * blocks[alpha].adjoint()).norm();
    if (std::max(forward, backward) > tol::kReducing)
      throw Error(ErrorCode::BlockIncompatible,
                  "block at " + poset.label(alpha) + " is not the restriction of the block at " +
                      poset.label(beta));
  }
  auto op = from_top(domain, blocks[domain->top()]);
  for (std::size_t level = 0; level < poset.size(); ++level)
    if ((op.restrict(level) - blocks[level]).norm() > tol::kReducing)
      throw Error(ErrorCode::BlockIncompatible, "reassembled block differs at " + poset.label(level));
  return op;
}

LocalOperator LocalOperator::identity(DomainPtr domain) {
  const Eigen::Index n = domain->dim(domain->top());
  return from_top(std::move(domain), Matrix::Identity(n, n));
}

LocalOperator LocalOperator::zero(DomainPtr domain) {
  const Eigen::Index n = domain->dim(domain->top());
  return from_top(std::move(domain), Matrix::Zero(n, n));
}

Matrix LocalOperator::ambient_matrix() const {
  const Matrix& v = domain_->basis(domain_->top());
  return v * top_ * v.adjoint();
}

Matrix restrict_block(const QuantizedDomain& domain, DirectedPoset::Index alpha,
                      DirectedPoset::Index beta, const Matrix& block_beta) {
  const Matrix j = domain.inclusion(alpha, beta);
  return j.adjoint() * block_beta * j;
}

double family_compatibility_residual(const QuantizedDomain& domain, const std::vector<Matrix>& family) {
  double worst = 0.0;
  for (auto [alpha, beta] : domain.poset().order_pairs()) {
    const Matrix r = restrict_block(domain, alpha, beta, family.at(beta));
    if (r.rows() != family.at(alpha).rows() || r.cols() != family.at(alpha).cols())
      return std::numeric_limits<double>::infinity();
    worst = std::max(worst, max_abs(r - family.at(alpha)));
  }
  return worst;
}

DirectedPoset::Index smallest_level_containing(const QuantizedDomain& domain, const Vector& u) {
  const auto& poset = domain.poset();
  const Eigen::Index n = domain.dim(domain.top());
  if (u.size() != n) throw Error(ErrorCode::VectorOutsideDomain, "vector length does not match the domain");
  if (!all_finite(u)) throw Error(ErrorCode::VectorOutsideDomain, "non-finite vector");
  const double bound = tol::kReducing * std::max(1.0, u.norm());
  std::vector<DirectedPoset::Index> holding;
  for (std::size_t level = 0; level < poset.size(); ++level) {
    const Matrix& c = domain.coords(level);
    Vector r = u;
    if (c.cols() > 0) r -= c * (c.adjoint() * u);
    if (r.norm() <= bound) holding.push_back(level);
  }
  for (auto a : holding)
    if (std::none_of(holding.begin(), holding.end(), [&](auto b) { return poset.less(b, a); }))
      return a;
  throw Error(ErrorCode::VectorOutsideDomain, "vector lies in no level");
}

double uniform_seminorm(const LocalOperator& t, DirectedPoset::Index level) {
  if (level >= t.domain()->poset().size()) throw Error(ErrorCode::UnknownElement, "level index");
  return operator_norm(t.restrict(level));
}

SeminormValue seminorm(const LocalOperator& t, const Seminorm& kind) {
  const auto& domain = *t.domain();
  switch (kind.kind) {
    case Seminorm::Kind::Uniform:
      return {uniform_seminorm(t, kind.level), kind.level};
    case Seminorm::Kind::Strong: {
      const auto level = smallest_level_containing(domain, kind.u);
      return {(t.top_matrix() * kind.u).norm(), level};
    }
    case Seminorm::Kind::Weak: {
      const auto lu = smallest_level_containing(domain, kind.u);
      const auto lv = smallest_level_containing(domain, kind.v);
      const auto level = domain.poset().upper_bound(lu, lv);
      return {std::abs(kind.u.dot(t.top_matrix() * kind.v)), level};
    }
  }
  return {};
}

LocalOperator add(const LocalOperator& t, const LocalOperator& s) {
  require_same_domain(t, s);
  return LocalOperator::from_top(t.domain(), t.top_matrix() + s.top_matrix());
}

LocalOperator scale(Complex lambda, const LocalOperator& t) {
  return LocalOperator::from_top(t.domain(), lambda * t.top_matrix());
}

LocalOperator compose(const LocalOperator& t, const LocalOperator& s) {
  require_same_domain(t, s);
  return LocalOperator::from_top(t.domain(), t.top_matrix() * s.top_matrix());
}

LocalOperator adjoint(const LocalOperator& t) {
  return LocalOperator::from_top(t.domain(), t.top_matrix().adjoint());
}

LazyChainOperator lazy_rule(const std::string& name, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "truncation depth must be positive");
  if (name == "diag_n") {
    return {name, [](int n) { return Eigen::Index{n}; },
            [](int n) {
              Vector d(n);
              for (int k = 0; k < n; ++k) d(k) = static_cast<double>(k + 1);
              return Matrix(d.asDiagonal());
            },
            depth};
  }
  if (name == "identity") {
    return {name, [](int n) { return Eigen::Index{n}; },
            [](int n) { return Matrix(Matrix::Identity(n, n)); }, depth};
  }
  if (name == "shift_pairs") {
    return {name, [](int n) { return Eigen::Index{2 * n}; },
            [](int n) {
              Matrix m = Matrix::Zero(2 * n, 2 * n);
              for (int k = 0; k < n; ++k) {
                m(2 * k, 2 * k + 1) = 1.0;
                m(2 * k + 1, 2 * k) = 1.0;
              }
              return m;
            },
            depth};
  }
  throw Error(ErrorCode::UnresolvedReference, "unknown lazy rule " + name);
}

std::vector<std::string> lazy_rule_names() { return {"diag_n", "identity", "shift_pairs"}; }

LocalOperator lazy_truncate(const LazyChainOperator& op, int n) {
  if (n < 1 || n > op.truncation_depth)
    throw Error(ErrorCode::DepthExceeded, "truncation " + std::to_string(n) + " outside [1, " +
                                              std::to_string(op.truncation_depth) + "]");
  std::vector<Eigen::Index> dims;
  for (int k = 1; k <= n; ++k) {
    dims.push_back(op.dim_rule(k));
    if (k > 1 && dims[k - 1] <= dims[k - 2])
      throw Error(ErrorCode::NonMonotoneDims, "dimension rule must be strictly increasing");
  }
  auto domain = std::make_shared<const QuantizedDomain>(QuantizedDomain::standard_flag(dims));
  Matrix top = op.block_rule(n);
  for (int m = 1; m < n; ++m) {
    const Eigen::Index d = dims[m - 1];
    if (top.topLeftCorner(d, d) != op.block_rule(m))
      throw Error(ErrorCode::BlockIncompatible, "rule blocks are not nested at level " + std::to_string(m));
  }
  return LocalOperator::from_top(std::move(domain), std::move(top));
}

}  // namespace locint
