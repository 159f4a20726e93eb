#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "locint/dec_diag.hpp"
#include "locint/direct_integral.hpp"
#include "locint/local_operator.hpp"

namespace locint {

/// Seeded generator. Floating draws are built from raw 64-bit outputs so
/// they do not depend on the standard library's distribution classes.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  bool coin() { return (engine_() >> 63) != 0; }
  /// Uniform in the unit square [0,1) x [0,1).
  Complex unit_square() {
    const double re = uniform();
    return {re, uniform()};
  }
  /// Entries from the unit square shifted to be centered at the origin.
  Matrix matrix(Eigen::Index rows, Eigen::Index cols);
  Vector vector(Eigen::Index n);
  /// Deterministic unitary from the Q factor of a random matrix.
  Matrix unitary(Eigen::Index n);

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct InstanceBounds {
  std::size_t max_atoms = 4;
  Eigen::Index max_fiber_dim = 3;
  std::size_t max_chain = 3;
  bool allow_diamond = true;
  bool counting_measure = true;
};

/// Random filtration on the given poset. Chains get either the standard
/// flag or a random rotation of it; the diamond gets random planes for the
/// two middle levels over a random common bottom.
QuantizedDomain random_domain(Rng& rng, const DirectedPoset& poset, Eigen::Index max_dim,
                              Eigen::Index min_top_dim = 1);

DirectedPoset random_poset(Rng& rng, const InstanceBounds& bounds);
DirectIntegralDomain random_direct_integral(Rng& rng, const InstanceBounds& bounds);

/// Random element of the locally bounded algebra of the domain.
LocalOperator random_local_operator(Rng& rng, std::shared_ptr<const QuantizedDomain> domain);
DecomposableOperator random_decomposable(Rng& rng, std::shared_ptr<const DirectIntegralDomain> dint);
std::vector<Complex> random_function(Rng& rng, std::size_t atoms);
FiberField random_field(Rng& rng, const DirectIntegralDomain& dint, DirectedPoset::Index level);

}  // namespace locint
