#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "locint/linalg.hpp"
#include "locint/quantized_domain.hpp"

namespace locint {

/// Finite measure space with strictly positive point masses.
class AtomicMeasureSpace {
 public:
  AtomicMeasureSpace(std::vector<std::string> atoms, std::vector<double> weights);
  static AtomicMeasureSpace counting(std::vector<std::string> atoms);
  /// Atoms "1".."n" with unit weights.
  static AtomicMeasureSpace counting(std::size_t n);

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double weight(std::size_t p) const { return weights_.at(p); }
  std::size_t index_of(const std::string& atom) const;
  bool is_counting() const noexcept { return counting_; }

  friend bool operator==(const AtomicMeasureSpace&, const AtomicMeasureSpace&) = default;

 private:
  std::vector<std::string> atoms_;
  std::vector<double> weights_;
  bool counting_ = true;
};

/// Vector field p -> x(p) with x(p) in level-alpha coordinates of fiber p.
struct FiberField {
  DirectedPoset::Index level = 0;
  std::vector<Vector> components;
};

/// Direct integral over an atomic measure of quantized domains sharing one
/// poset. The assembled domain is the weighted direct sum: level alpha is
/// the concatenation of the fiber level spaces, atom by atom, and a field's
/// assembled coordinates carry the factor sqrt(mu(p)) so the Euclidean inner
/// product equals sum_p mu(p) <x(p), y(p)>.
class DirectIntegralDomain {
 public:
  using Index = DirectedPoset::Index;

  DirectIntegralDomain(AtomicMeasureSpace measure, std::vector<QuantizedDomain> fibers);

  const AtomicMeasureSpace& measure() const noexcept { return measure_; }
  const DirectedPoset& poset() const noexcept { return fibers_.front().poset(); }
  const std::vector<QuantizedDomain>& fibers() const noexcept { return fibers_; }
  const QuantizedDomain& fiber(std::size_t p) const { return fibers_.at(p); }
  std::size_t atom_count() const noexcept { return fibers_.size(); }

  /// Assembled quantized domain (built once at construction).
  const std::shared_ptr<const QuantizedDomain>& assembled() const noexcept { return assembled_; }

  /// Offset of atom p's block inside the assembled ambient space.
  Eigen::Index ambient_offset(std::size_t p) const { return ambient_offsets_.at(p); }
  /// Offset of atom p's block inside assembled level-alpha coordinates.
  Eigen::Index level_offset(Index level, std::size_t p) const;

  /// Field -> assembled level coordinates (with sqrt(mu) scaling).
  Vector to_assembled(const FiberField& x) const;
  FiberField from_assembled(Index level, const Vector& coords) const;

  FiberField zero_field(Index level) const;
  /// Promote along an inclusion alpha <= beta, fiberwise.
  FiberField promote(const FiberField& x, Index beta) const;

 private:
  AtomicMeasureSpace measure_;
  std::vector<QuantizedDomain> fibers_;
  std::vector<Eigen::Index> ambient_offsets_;
  std::shared_ptr<const QuantizedDomain> assembled_;
};

/// Assembles the weighted direct sum as a quantized domain.
std::shared_ptr<const QuantizedDomain> assemble(const AtomicMeasureSpace& measure,
                                                const std::vector<QuantizedDomain>& fibers);

/// sum_p mu(p) <x(p), y(p)>; the lower level is promoted when the levels
/// are comparable, otherwise LevelIncomparable.
Complex inner_product(const DirectIntegralDomain& dint, const FiberField& x, const FiberField& y);

/// f_alpha = sum_p mu(p) |x(p) - Q_{alpha,p} x(p)|^2 for each alpha of the
/// chain (which must be strictly increasing).
std::vector<double> projection_defect_profile(const DirectIntegralDomain& dint, const FiberField& x,
                                              const std::vector<DirectedPoset::Index>& chain);

/// Same quantity computed on the assembled domain, used as a cross-check.
std::vector<double> assembled_defect_profile(const DirectIntegralDomain& dint, const FiberField& x,
                                             const std::vector<DirectedPoset::Index>& chain);

struct InterchangeLevel {
  std::string level;
  Eigen::Index dim_union_of_integrals = 0;  // assembled level dimension
  Eigen::Index dim_integral_of_unions = 0;  // sum of fiber level dims
  double basis_residual = 0.0;
};

struct InterchangeReport {
  std::vector<InterchangeLevel> levels;
  std::vector<std::string> canonical_violations;
  bool pass = true;
  double max_residual = 0.0;
};

/// Compares, level by level, the assembled level spaces (direct integral of
/// level spaces) against the level spaces cut out of the direct integral of
/// the top fibers, including the canonical-form condition of every fiber.
InterchangeReport interchange_check(const DirectIntegralDomain& dint);

}  // namespace locint
