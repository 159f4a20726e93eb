#include <doctest.h>

#include <algorithm>

#include "locint/quantized_domain.hpp"
#include "locint/random_instances.hpp"
#include "support/expect_error.hpp"

using namespace locint;
using locint::testing::code_of;

namespace {

bool has_failure(const DomainDiagnostics& d, const std::string& needle) {
  return std::any_of(d.failures.begin(), d.failures.end(),
                     [&](const std::string& f) { return f.find(needle) != std::string::npos; });
}

// Two distinct planes through e1 in C^3.
std::map<QuantizedDomain::Index, Matrix> diamond_seeds() {
  Matrix pa = Matrix::Zero(3, 2), pb = Matrix::Zero(3, 2);
  pa(0, 0) = 1.0;
  pa(1, 1) = 1.0;
  pb(0, 0) = 1.0;
  pb(1, 1) = std::sqrt(0.5);
  pb(2, 1) = std::sqrt(0.5);
  return {{1, pa}, {2, pb}};
}

}  // namespace

TEST_CASE("standard flag (1,2,3)") {
  auto d = QuantizedDomain::standard_flag({1, 2, 3});
  CHECK(d.ambient_dim() == 3);
  CHECK(d.dim("1") == 1);
  CHECK(d.dim("3") == 3);
  CHECK(bitwise_equal(d.basis(0), Matrix(Matrix::Identity(3, 3).leftCols(1))));
  CHECK(bitwise_equal(d.basis(1), Matrix(Matrix::Identity(3, 3).leftCols(2))));
  CHECK(validate(d).ok());
  CHECK(d.is_prefix(0, 2));
  CHECK(d.is_prefix(1, 2));
}

TEST_CASE("non-monotone dimensions are rejected") {
  CHECK(code_of([] { QuantizedDomain::standard_flag({2, 1}); }) == ErrorCode::NonMonotoneDims);
}

TEST_CASE("top level must span the ambient space") {
  CHECK(code_of([] { QuantizedDomain::build(DirectedPoset::chain(2), 3, {1, 2}); }).has_value());
}

TEST_CASE("diamond with distinct seed planes") {
  auto dom = QuantizedDomain::build(DirectedPoset::diamond(), 3, {1, 2, 2, 3}, diamond_seeds());
  auto diag = validate(dom);
  CHECK(diag.ok());
  REQUIRE(diag.inclusions.size() == 4);
  for (const auto& c : diag.inclusions) CHECK(c.residual <= 1e-12);
  // Seed planes are reproduced as spans.
  const auto seeds = diamond_seeds();
  for (const auto& [lvl, seed] : seeds)
    CHECK(subspace_compare({3, dom.basis(lvl)}, {3, seed}).relation == SubspaceRelation::Equal);
  // Both inclusions out of the bottom are isometric.
  for (QuantizedDomain::Index up : {1u, 2u}) {
    const Matrix j = dom.inclusion(0, up);
    CHECK(max_abs(j.adjoint() * j - Matrix::Identity(1, 1)) <= 1e-12);
  }
}

TEST_CASE("projections") {
  auto d = QuantizedDomain::standard_flag({1, 2, 3});
  CHECK(max_abs(d.projection(d.top()) - Matrix::Identity(3, 3)) <= 1e-15);
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = 1.0;
  CHECK(max_abs(d.projection("1") - expected) == 0.0);
}

TEST_CASE("projections are nested along the order") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const auto poset = trial % 2 ? DirectedPoset::diamond() : DirectedPoset::chain(3);
    const auto dom = random_domain(rng, poset, 4);
    CHECK(validate(dom).ok());
    for (auto [a, b] : poset.order_pairs()) {
      const Matrix pa = dom.projection(a), pb = dom.projection(b);
      CHECK(max_abs(pa * pb - pa) <= 1e-12);
      CHECK(max_abs(pb * pa - pa) <= 1e-12);
    }
    for (std::size_t i = 0; i < poset.size(); ++i) {
      const Matrix p = dom.projection(i);
      CHECK(max_abs(p * p - p) <= 1e-12);
      CHECK(max_abs(p - p.adjoint()) <= 1e-15);
      CHECK(max_abs(dom.top_projection(i) - dom.coords(i) * dom.coords(i).adjoint()) == 0.0);
    }
  }
}

TEST_CASE("canonical form makes parent inclusions exact") {
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const auto poset = trial % 2 ? DirectedPoset::diamond() : DirectedPoset::chain(3);
    const auto dom = random_domain(rng, poset, 4);
    for (std::size_t b = 0; b < poset.size(); ++b) {
      const auto p = poset.parent(b);
      if (p == poset.size()) continue;
      CHECK(dom.is_prefix(p, b));
      const Matrix j = dom.inclusion(p, b);
      Matrix expected = Matrix::Zero(dom.dim(b), dom.dim(p));
      expected.topRows(dom.dim(p)).setIdentity();
      CHECK(bitwise_equal(j, expected));
    }
  }
}

TEST_CASE("corrupted basis vector flags the offending pair") {
  // Level 1 points along e3 while level 2 is span(e1, e2).
  Matrix b1 = Matrix::Zero(3, 1), b2 = Matrix::Zero(3, 2);
  b1(2, 0) = 1.0;
  b2(0, 0) = 1.0;
  b2(1, 1) = 1.0;
  auto bad = QuantizedDomain::from_bases(DirectedPoset::chain(3), 3, {b1, b2, Matrix::Identity(3, 3)});
  auto d = validate(bad);
  CHECK_FALSE(d.ok());
  CHECK(has_failure(d, "InclusionViolation: 1 -> 2"));
  CHECK_FALSE(has_failure(d, "InclusionViolation: 2 -> 3"));
}

TEST_CASE("non-orthonormal basis is flagged") {
  Matrix b1 = Matrix::Zero(2, 1);
  b1(0, 0) = 2.0;
  auto bad = QuantizedDomain::from_bases(DirectedPoset::chain(2), 2, {b1, Matrix::Identity(2, 2)});
  CHECK(has_failure(validate(bad), "NotOrthonormal"));
}

TEST_CASE("drift between basis and coordinates is flagged") {
  auto d = QuantizedDomain::standard_flag({1, 2});
  Matrix moved = Matrix::Zero(2, 1);
  moved(1, 0) = 1.0;
  auto bad = d.with_corrupted_basis(0, moved);
  CHECK_FALSE(validate(bad).ok());
  CHECK(validate(bad).coordinate_residual.at("1") > 0.5);
}

TEST_CASE("branch domains") {
  auto d = QuantizedDomain::standard_flag({1, 2, 3});
  auto b = d.branch_domain(1);
  CHECK(b.poset().size() == 2);
  CHECK(b.ambient_dim() == 2);
  CHECK(validate(b).ok());
  CHECK(b.dim("1") == 1);
}

TEST_CASE("trivial filtration and equality") {
  auto t = QuantizedDomain::trivial(4);
  CHECK(t.poset().size() == 1);
  CHECK(t.dim(t.top()) == 4);
  CHECK(t == QuantizedDomain::trivial(4));
  CHECK_FALSE(t == QuantizedDomain::trivial(3));
}
