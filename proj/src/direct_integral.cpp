#include "locint/direct_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "locint/error.hpp"

namespace locint {

AtomicMeasureSpace::AtomicMeasureSpace(std::vector<std::string> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw Error(ErrorCode::InvalidArgument, "measure space needs at least one atom");
  if (atoms_.size() != weights_.size())
    throw Error(ErrorCode::DimensionMismatch, "one weight per atom required");
  if (std::set<std::string>(atoms_.begin(), atoms_.end()).size() != atoms_.size())
    throw Error(ErrorCode::InvalidArgument, "duplicate atom labels");
  for (std::size_t p = 0; p < atoms_.size(); ++p)
    if (!(weights_[p] > 0.0) || !std::isfinite(weights_[p]))
      throw Error(ErrorCode::InvalidArgument, "weight of atom " + atoms_[p] + " must be finite and > 0");
  counting_ = std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

AtomicMeasureSpace AtomicMeasureSpace::counting(std::vector<std::string> atoms) {
  std::vector<double> w(atoms.size(), 1.0);
  return AtomicMeasureSpace(std::move(atoms), std::move(w));
}

AtomicMeasureSpace AtomicMeasureSpace::counting(std::size_t n) {
  std::vector<std::string> atoms;
  for (std::size_t i = 1; i <= n; ++i) atoms.push_back(std::to_string(i));
  return counting(std::move(atoms));
}

std::size_t AtomicMeasureSpace::index_of(const std::string& atom) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end()) throw Error(ErrorCode::UnknownElement, "atom " + atom);
  return static_cast<std::size_t>(it - atoms_.begin());
}

std::shared_ptr<const QuantizedDomain> assemble(const AtomicMeasureSpace& measure,
                                                const std::vector<QuantizedDomain>& fibers) {
  if (fibers.size() != measure.size())
    throw Error(ErrorCode::DimensionMismatch, "one fiber per atom required");
  const DirectedPoset& poset = fibers.front().poset();
  for (const auto& f : fibers)
    if (!(f.poset() == poset)) throw Error(ErrorCode::FiberPosetMismatch, "fibers must share one poset");

  Eigen::Index total = 0;
  for (const auto& f : fibers) total += f.ambient_dim();
  std::vector<Matrix> bases, coords;
  for (std::size_t level = 0; level < poset.size(); ++level) {
    Eigen::Index cols = 0;
    for (const auto& f : fibers) cols += f.dim(level);
    Matrix b = Matrix::Zero(total, cols);
    Matrix c = Matrix::Zero(total, cols);
    Eigen::Index row = 0, col = 0;
    for (const auto& f : fibers) {
      const Eigen::Index n = f.ambient_dim(), d = f.dim(level);
      b.block(row, col, n, d) = f.basis(level);
      c.block(row, col, n, d) = f.coords(level);
      row += n;
      col += d;
    }
    bases.push_back(std::move(b));
    coords.push_back(std::move(c));
  }
  return std::make_shared<const QuantizedDomain>(
      QuantizedDomain::from_parts(poset, total, std::move(bases), std::move(coords)));
}

DirectIntegralDomain::DirectIntegralDomain(AtomicMeasureSpace measure, std::vector<QuantizedDomain> fibers)
    : measure_(std::move(measure)), fibers_(std::move(fibers)) {
  if (fibers_.size() != measure_.size())
    throw Error(ErrorCode::DimensionMismatch, "one fiber per atom required");
  Eigen::Index offset = 0;
  for (const auto& f : fibers_) {
    ambient_offsets_.push_back(offset);
    offset += f.ambient_dim();
  }
  assembled_ = assemble(measure_, fibers_);
}

Eigen::Index DirectIntegralDomain::level_offset(Index level, std::size_t p) const {
  Eigen::Index offset = 0;
  for (std::size_t q = 0; q < p; ++q) offset += fibers_.at(q).dim(level);
  return offset;
}

Vector DirectIntegralDomain::to_assembled(const FiberField& x) const {
  if (x.components.size() != fibers_.size())
    throw Error(ErrorCode::DimensionMismatch, "field needs one component per atom");
  Vector out(assembled_->dim(x.level));
  Eigen::Index at = 0;
  for (std::size_t p = 0; p < fibers_.size(); ++p) {
    const Eigen::Index d = fibers_[p].dim(x.level);
    if (x.components[p].size() != d)
      throw Error(ErrorCode::DimensionMismatch, "component at atom " + measure_.atoms()[p]);
    out.segment(at, d) = std::sqrt(measure_.weight(p)) * x.components[p];
    at += d;
  }
  return out;
}

FiberField DirectIntegralDomain::from_assembled(Index level, const Vector& coords) const {
  if (coords.size() != assembled_->dim(level))
    throw Error(ErrorCode::DimensionMismatch, "assembled coordinate length");
  FiberField x{level, {}};
  Eigen::Index at = 0;
  for (std::size_t p = 0; p < fibers_.size(); ++p) {
    const Eigen::Index d = fibers_[p].dim(level);
    x.components.emplace_back(coords.segment(at, d) / std::sqrt(measure_.weight(p)));
    at += d;
  }
  return x;
}

FiberField DirectIntegralDomain::zero_field(Index level) const {
  FiberField x{level, {}};
  for (const auto& f : fibers_) x.components.push_back(Vector::Zero(f.dim(level)));
  return x;
}

FiberField DirectIntegralDomain::promote(const FiberField& x, Index beta) const {
  FiberField y{beta, {}};
  for (std::size_t p = 0; p < fibers_.size(); ++p)
    y.components.emplace_back(fibers_[p].inclusion(x.level, beta) * x.components.at(p));
  return y;
}

Complex inner_product(const DirectIntegralDomain& dint, const FiberField& x, const FiberField& y) {
  const auto& poset = dint.poset();
  if (x.components.size() != dint.atom_count() || y.components.size() != dint.atom_count())
    throw Error(ErrorCode::DimensionMismatch, "field needs one component per atom");
  if (!poset.comparable(x.level, y.level))
    throw Error(ErrorCode::LevelIncomparable,
                poset.label(x.level) + " and " + poset.label(y.level) + " are incomparable");
  const FiberField& hi = poset.leq(x.level, y.level) ? y : x;
  const FiberField xs = x.level == hi.level ? x : dint.promote(x, hi.level);
  const FiberField ys = y.level == hi.level ? y : dint.promote(y, hi.level);
  Complex sum = 0.0;
  for (std::size_t p = 0; p < dint.atom_count(); ++p) {
    if (xs.components[p].size() != dint.fiber(p).dim(hi.level) ||
        ys.components[p].size() != dint.fiber(p).dim(hi.level))
      throw Error(ErrorCode::DimensionMismatch, "component size at atom " + dint.measure().atoms()[p]);
    sum += dint.measure().weight(p) * xs.components[p].dot(ys.components[p]);
  }
  return sum;
}

namespace {

void require_chain(const DirectedPoset& poset, const std::vector<DirectedPoset::Index>& chain) {
  if (!poset.is_chain(chain)) throw Error(ErrorCode::NotAChain, "levels are not strictly increasing");
}

double level_defect(const QuantizedDomain& domain, DirectedPoset::Index field_level,
                    const Vector& x, DirectedPoset::Index alpha) {
  // Work in top coordinates: y = C_gamma x, defect = |y - C_alpha C_alpha^* y|^2.
  Vector y = domain.coords(field_level) * x;
  const Matrix& c = domain.coords(alpha);
  Vector residual = y;
  if (c.cols() > 0) residual -= c * (c.adjoint() * y);
  return residual.squaredNorm();
}

}  // namespace

std::vector<double> projection_defect_profile(const DirectIntegralDomain& dint, const FiberField& x,
                                              const std::vector<DirectedPoset::Index>& chain) {
  require_chain(dint.poset(), chain);
  std::vector<double> out;
  for (auto alpha : chain) {
    double f = 0.0;
    for (std::size_t p = 0; p < dint.atom_count(); ++p)
      f += dint.measure().weight(p) * level_defect(dint.fiber(p), x.level, x.components.at(p), alpha);
    out.push_back(f);
  }
  return out;
}

std::vector<double> assembled_defect_profile(const DirectIntegralDomain& dint, const FiberField& x,
                                             const std::vector<DirectedPoset::Index>& chain) {
  require_chain(dint.poset(), chain);
  const Vector coords = dint.to_assembled(x);
  std::vector<double> out;
  for (auto alpha : chain) out.push_back(level_defect(*dint.assembled(), x.level, coords, alpha));
  return out;
}

InterchangeReport interchange_check(const DirectIntegralDomain& dint) {
  InterchangeReport report;
  const auto& poset = dint.poset();
  const auto& assembled = *dint.assembled();
  for (std::size_t p = 0; p < dint.atom_count(); ++p) {
    const auto diag = validate(dint.fiber(p));
    for (const auto& label : diag.canonical_violations)
      report.canonical_violations.push_back(dint.measure().atoms()[p] + ":" + label);
  }
  const Eigen::Index total = assembled.ambient_dim();
  for (std::size_t level = 0; level < poset.size(); ++level) {
    InterchangeLevel row;
    row.level = poset.label(level);
    row.dim_union_of_integrals = assembled.dim(level);
    // Level space cut out of the direct integral of the unions: each fiber's
    // union (top) basis applied to that fiber's level coordinates.
    Eigen::Index cols = 0;
    for (const auto& f : dint.fibers()) cols += f.dim(level);
    Matrix cut = Matrix::Zero(total, cols);
    Eigen::Index col = 0;
    for (std::size_t p = 0; p < dint.atom_count(); ++p) {
      const auto& f = dint.fiber(p);
      const Eigen::Index d = f.dim(level);
      cut.block(dint.ambient_offset(p), col, f.ambient_dim(), d) = columnwise_product(f.basis(f.top()), f.coords(level));
      col += d;
    }
    row.dim_integral_of_unions = cols;
    if (row.dim_integral_of_unions != row.dim_union_of_integrals ||
        cut.rows() != assembled.basis(level).rows()) {
      row.basis_residual = std::numeric_limits<double>::infinity();
    } else {
      row.basis_residual = max_abs(cut - assembled.basis(level));
    }
    report.max_residual = std::max(report.max_residual, row.basis_residual);
    report.levels.push_back(std::move(row));
  }
  report.pass = report.canonical_violations.empty() && report.max_residual <= tol::kBasis;
  return report;
}

}  // namespace locint
