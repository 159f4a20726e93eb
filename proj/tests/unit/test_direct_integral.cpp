#include <doctest.h>

#include "locint/direct_integral.hpp"
#include "locint/random_instances.hpp"
#include "support/expect_error.hpp"

using namespace locint;
using locint::testing::code_of;

namespace {

Vector unit(Eigen::Index n, Eigen::Index i) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

// Chain of length 2 in every fiber; level dims (lo, hi).
QuantizedDomain flag2(Eigen::Index lo, Eigen::Index hi) { return QuantizedDomain::standard_flag({lo, hi}); }

}  // namespace

TEST_CASE("counting measure over three atoms assembles a direct sum") {
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(3),
                            {QuantizedDomain::standard_flag({1, 2}), QuantizedDomain::standard_flag({2, 2}),
                             QuantizedDomain::standard_flag({2, 3})});
  const auto& a = *dint.assembled();
  CHECK(a.dim("1") == 5);
  CHECK(a.dim("2") == 7);
  CHECK(a.ambient_dim() == 7);
  CHECK(validate(a).ok());
  CHECK(dint.level_offset(0, 1) == 1);
  CHECK(dint.level_offset(0, 2) == 3);
  CHECK(dint.ambient_offset(2) == 4);
}

TEST_CASE("single atom with weight 1 reproduces the fiber") {
  auto fiber = QuantizedDomain::standard_flag({1, 3});
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(1), {fiber});
  const auto& a = *dint.assembled();
  CHECK(a.ambient_dim() == 3);
  for (std::size_t l = 0; l < 2; ++l) {
    CHECK(bitwise_equal(a.basis(l), fiber.basis(l)));
    CHECK(bitwise_equal(a.coords(l), fiber.coords(l)));
  }
  auto rep = interchange_check(dint);
  CHECK(rep.pass);
  CHECK(rep.max_residual == 0.0);
}

TEST_CASE("weighted inner products") {
  AtomicMeasureSpace mu({"u", "v"}, {2.0, 0.5});
  CHECK_FALSE(mu.is_counting());
  DirectIntegralDomain dint(mu, {QuantizedDomain::trivial(1), QuantizedDomain::trivial(1)});
  FiberField ones{0, {unit(1, 0), unit(1, 0)}};
  CHECK(inner_product(dint, ones, ones).real() == doctest::Approx(2.5).epsilon(1e-15));
  const Vector c = dint.to_assembled(ones);
  CHECK(std::abs(c(0) - std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(c(1) - std::sqrt(0.5)) <= 1e-15);
  CHECK(std::abs(c.squaredNorm() - 2.5) <= 1e-14);
}

TEST_CASE("counting inner product of orthonormal components") {
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(2), {QuantizedDomain::trivial(1), QuantizedDomain::trivial(2)});
  FiberField x{0, {unit(1, 0), unit(2, 1)}};
  CHECK(inner_product(dint, x, x) == Complex(2.0, 0.0));
  CHECK(inner_product(dint, x, dint.zero_field(0)) == Complex(0.0, 0.0));
}

TEST_CASE("non-positive weights are rejected") {
  CHECK(code_of([] { AtomicMeasureSpace({"a"}, {0.0}); }).has_value());
  CHECK(code_of([] { AtomicMeasureSpace({"a", "b"}, {1.0}); }).has_value());
}

TEST_CASE("fibers must share the poset") {
  CHECK(code_of([] {
          DirectIntegralDomain(AtomicMeasureSpace::counting(2), {flag2(1, 2), QuantizedDomain::trivial(2)});
        }) == ErrorCode::FiberPosetMismatch);
}

TEST_CASE("inner product promotes along the order") {
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(2), {flag2(1, 2), flag2(1, 3)});
  FiberField low{0, {unit(1, 0), unit(1, 0)}};
  FiberField high{1, {unit(2, 0), unit(3, 0) + unit(3, 2)}};
  CHECK(inner_product(dint, low, high) == Complex(2.0, 0.0));
  CHECK(inner_product(dint, high, low) == Complex(2.0, 0.0));
  auto p = dint.promote(low, 1);
  CHECK(p.level == 1);
  CHECK(p.components[1].size() == 3);
}

TEST_CASE("incomparable levels cannot be paired") {
  Matrix pa = Matrix::Zero(3, 2), pb = Matrix::Zero(3, 2);
  pa(0, 0) = pa(1, 1) = 1.0;
  pb(0, 0) = pb(2, 1) = 1.0;
  auto dom = QuantizedDomain::build(DirectedPoset::diamond(), 3, {1, 2, 2, 3}, {{1, pa}, {2, pb}});
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(1), {dom});
  CHECK(code_of([&] { inner_product(dint, dint.zero_field(1), dint.zero_field(2)); }) ==
        ErrorCode::LevelIncomparable);
}

TEST_CASE("defect profile of e3 on the standard flag") {
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(1), {QuantizedDomain::standard_flag({1, 2, 3})});
  FiberField x{2, {unit(3, 2)}};
  const auto prof = projection_defect_profile(dint, x, {0, 1, 2});
  REQUIRE(prof.size() == 3);
  CHECK(prof[0] == 1.0);
  CHECK(prof[1] == 1.0);
  CHECK(prof[2] == 0.0);
  FiberField bottom{0, {unit(1, 0)}};
  for (double v : projection_defect_profile(dint, bottom, {0, 1, 2})) CHECK(v == 0.0);
  CHECK(code_of([&] { projection_defect_profile(dint, x, {2, 0}); }) == ErrorCode::NotAChain);
}

TEST_CASE("defect profiles are nonincreasing and match the assembled computation") {
  Rng rng(4242);
  InstanceBounds b;
  b.allow_diamond = false;
  for (int trial = 0; trial < 40; ++trial) {
    auto dint = random_direct_integral(rng, b);
    const auto chain = dint.poset().linear_extension();
    const auto level = chain[rng.between(0, chain.size() - 1)];
    auto x = random_field(rng, dint, level);
    const auto f = projection_defect_profile(dint, x, chain);
    const auto g = assembled_defect_profile(dint, x, chain);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] <= f[i] + 1e-12);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(std::abs(f[i] - g[i]) <= 1e-12 * std::max(1.0, f[0]));
      if (dint.poset().leq(level, chain[i])) CHECK(f[i] == 0.0);
    }
  }
}

TEST_CASE("assembled coordinates round trip") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto dint = random_direct_integral(rng, {});
    auto x = random_field(rng, dint, dint.poset().top());
    auto y = dint.from_assembled(x.level, dint.to_assembled(x));
    for (std::size_t p = 0; p < x.components.size(); ++p)
      CHECK((x.components[p] - y.components[p]).norm() <= 1e-14 * (1.0 + x.components[p].norm()));
    CHECK(std::abs(inner_product(dint, x, x) - Complex(dint.to_assembled(x).squaredNorm(), 0.0)) <=
          1e-12 * (1.0 + dint.to_assembled(x).squaredNorm()));
  }
}

TEST_CASE("interchange check passes with zero residual on random instances") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto dint = random_direct_integral(rng, {});
    auto rep = interchange_check(dint);
    CHECK(rep.pass);
    CHECK(rep.max_residual == 0.0);
    CHECK(rep.canonical_violations.empty());
    for (const auto& l : rep.levels) CHECK(l.dim_union_of_integrals == l.dim_integral_of_unions);
  }
}

TEST_CASE("interchange check flags a permuted fiber basis") {
  // The top basis lists e2 before e1, so level 1 = span(e1) is not its prefix.
  Matrix low = Matrix::Zero(2, 1), top = Matrix::Zero(2, 2);
  low(0, 0) = 1.0;
  top(1, 0) = 1.0;
  top(0, 1) = 1.0;
  auto permuted = QuantizedDomain::from_bases(DirectedPoset::chain(2), 2, {low, top});
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(2), {flag2(1, 2), permuted});
  auto rep = interchange_check(dint);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.canonical_violations.empty());
}

TEST_CASE("interchange check flags basis drift") {
  auto good = flag2(1, 2);
  Matrix moved = Matrix::Zero(2, 1);
  moved(1, 0) = 1.0;
  DirectIntegralDomain dint(AtomicMeasureSpace::counting(1), {good.with_corrupted_basis(0, moved)});
  auto rep = interchange_check(dint);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_residual > 0.5);
}
