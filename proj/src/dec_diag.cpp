#include "locint/dec_diag.hpp"

#include <algorithm>

#include "locint/error.hpp"

namespace locint {

Matrix block_diagonal(const DirectIntegralDomain& dint, const std::vector<Matrix>& per_atom) {
  const Eigen::Index n = dint.assembled()->ambient_dim();
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t p = 0; p < dint.atom_count(); ++p) {
    const Eigen::Index off = dint.ambient_offset(p), d = dint.fiber(p).ambient_dim();
    if (per_atom.at(p).rows() != d || per_atom.at(p).cols() != d)
      throw Error(ErrorCode::FiberMismatch, "block for atom " + dint.measure().atoms()[p]);
    out.block(off, off, d, d) = per_atom[p];
  }
  return out;
}

DecomposableOperator DecomposableOperator::from_fibers(DintPtr dint, std::vector<LocalOperator> fibers) {
  if (fibers.size() != dint->atom_count())
    throw Error(ErrorCode::FiberMismatch, "one fiber operator per atom required");
  std::vector<Matrix> tops;
  for (std::size_t p = 0; p < fibers.size(); ++p) {
    const auto& fd = *fibers[p].domain();
    if (!(fd == dint->fiber(p)))
      throw Error(ErrorCode::FiberMismatch, "operator for atom " + dint->measure().atoms()[p] +
                                                " lives on a different fiber domain");
    tops.push_back(fibers[p].top_matrix());
  }
  auto assembled = LocalOperator::from_top(dint->assembled(), block_diagonal(*dint, tops));
  return DecomposableOperator(std::move(dint), std::move(fibers), std::move(assembled));
}

DiagonalizableOperator DiagonalizableOperator::from_function(DintPtr dint, std::vector<Complex> f) {
  if (f.size() != dint->atom_count())
    throw Error(ErrorCode::MissingAtomValue, "f must be given on every atom");
  std::vector<LocalOperator> fibers;
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (!std::isfinite(f[p].real()) || !std::isfinite(f[p].imag()))
      throw Error(ErrorCode::InvalidArgument, "f must be finite");
    auto domain = std::make_shared<const QuantizedDomain>(dint->fiber(p));
    const Eigen::Index n = domain->ambient_dim();
    fibers.push_back(LocalOperator::from_top(domain, f[p] * Matrix::Identity(n, n)));
  }
  auto dec = DecomposableOperator::from_fibers(std::move(dint), std::move(fibers));
  return DiagonalizableOperator(std::move(f), std::move(dec));
}

double DiagonalizableOperator::sup_norm() const {
  double m = 0.0;
  for (const auto& v : f_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void require_level_shape(const DirectIntegralDomain& dint, const FiberField& u) {
  if (u.level >= dint.poset().size()) throw Error(ErrorCode::LevelMismatch, "unknown level");
  if (u.components.size() != dint.atom_count())
    throw Error(ErrorCode::LevelMismatch, "field needs one component per atom");
  for (std::size_t p = 0; p < dint.atom_count(); ++p)
    if (u.components[p].size() != dint.fiber(p).dim(u.level))
      throw Error(ErrorCode::LevelMismatch, "component size does not match level " +
                                                dint.poset().label(u.level) + " at atom " +
                                                dint.measure().atoms()[p]);
}

}  // namespace

FiberField apply(const DecomposableOperator& t, const FiberField& u) {
  require_level_shape(*t.dint(), u);
  FiberField out{u.level, {}};
  for (std::size_t p = 0; p < t.fibers().size(); ++p)
    out.components.emplace_back(t.fiber(p).restrict(u.level) * u.components[p]);
  return out;
}

FiberField apply_assembled(const DecomposableOperator& t, const FiberField& u) {
  require_level_shape(*t.dint(), u);
  const auto& dint = *t.dint();
  return dint.from_assembled(u.level, t.assembled().restrict(u.level) * dint.to_assembled(u));
}

std::vector<NormProfileEntry> dec_norm_profile(const DecomposableOperator& t) {
  const auto& poset = t.dint()->poset();
  std::vector<NormProfileEntry> out;
  for (std::size_t level = 0; level < poset.size(); ++level) {
    NormProfileEntry e;
    e.level = poset.label(level);
    for (const auto& f : t.fibers()) e.formula = std::max(e.formula, operator_norm(f.restrict(level)));
    e.assembled = operator_norm(t.assembled().restrict(level));
    e.difference = std::abs(e.formula - e.assembled);
    out.push_back(e);
  }
  return out;
}

Matrix embed_phi(const DiagonalizableOperator& t) { return t.as_decomposable().assembled().top_matrix(); }

std::optional<std::vector<LocalOperator>> detect_decomposable(const DirectIntegralDomain& dint,
                                                              const LocalOperator& op, double tol) {
  const auto& assembled = *dint.assembled();
  if (!(*op.domain() == assembled)) return std::nullopt;
  const auto& poset = dint.poset();
  for (std::size_t level = 0; level < poset.size(); ++level) {
    const Matrix& block = op.restrict(level);
    for (std::size_t p = 0; p < dint.atom_count(); ++p)
      for (std::size_t q = 0; q < dint.atom_count(); ++q) {
        if (p == q) continue;
        const auto rp = dint.level_offset(level, p), rq = dint.level_offset(level, q);
        const auto dp = dint.fiber(p).dim(level), dq = dint.fiber(q).dim(level);
        if (dp == 0 || dq == 0) continue;
        if (block.block(rp, rq, dp, dq).norm() > tol) return std::nullopt;
      }
  }
  std::vector<LocalOperator> fibers;
  for (std::size_t p = 0; p < dint.atom_count(); ++p) {
    const auto off = dint.ambient_offset(p);
    const auto d = dint.fiber(p).ambient_dim();
    auto domain = std::make_shared<const QuantizedDomain>(dint.fiber(p));
    try {
      fibers.push_back(LocalOperator::from_top(domain, op.top_matrix().block(off, off, d, d)));
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return fibers;
}

namespace {

template <typename F>
DecomposableOperator fiberwise(const DecomposableOperator& t, F&& op) {
  std::vector<LocalOperator> fibers;
  for (std::size_t p = 0; p < t.fibers().size(); ++p) fibers.push_back(op(p));
  return DecomposableOperator::from_fibers(t.dint(), std::move(fibers));
}

void require_same_dint(const DecomposableOperator& t, const DecomposableOperator& s) {
  if (t.dint() != s.dint() && !(*t.dint()->assembled() == *s.dint()->assembled()))
    throw Error(ErrorCode::DomainMismatch, "operators live on different direct integrals");
}

}  // namespace

DecomposableOperator dec_add(const DecomposableOperator& t, const DecomposableOperator& s) {
  require_same_dint(t, s);
  return fiberwise(t, [&](std::size_t p) { return add(t.fiber(p), s.fiber(p)); });
}

DecomposableOperator dec_scale(Complex lambda, const DecomposableOperator& t) {
  return fiberwise(t, [&](std::size_t p) { return scale(lambda, t.fiber(p)); });
}

DecomposableOperator dec_compose(const DecomposableOperator& t, const DecomposableOperator& s) {
  require_same_dint(t, s);
  return fiberwise(t, [&](std::size_t p) { return compose(t.fiber(p), s.fiber(p)); });
}

DecomposableOperator dec_adjoint(const DecomposableOperator& t) {
  return fiberwise(t, [&](std::size_t p) { return adjoint(t.fiber(p)); });
}

}  // namespace locint
