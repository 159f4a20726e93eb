#include <doctest.h>

#include "locint/local_operator.hpp"
#include "locint/random_instances.hpp"
#include "support/expect_error.hpp"

using namespace locint;
using locint::testing::code_of;

namespace {

std::shared_ptr<const QuantizedDomain> flag(std::vector<Eigen::Index> dims) {
  return std::make_shared<const QuantizedDomain>(QuantizedDomain::standard_flag(dims));
}

Matrix diag(std::initializer_list<Complex> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (auto v : d) m(i, i) = v, ++i;
  return m;
}

Matrix one(Complex v) { return Matrix::Constant(1, 1, v); }

}  // namespace

TEST_CASE("from_top accepts block diagonal and rejects off-diagonal coupling") {
  auto d = flag({1, 2});
  auto t = LocalOperator::from_top(d, diag({2.0, 7.0}));
  CHECK(t.restrict("1") == one(2.0));
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(code_of([&] { LocalOperator::from_top(d, nil); }) == ErrorCode::NotLocallyBounded);
  CHECK(code_of([&] { LocalOperator::from_top(d, Matrix::Identity(3, 3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("diag(1..5) is locally bounded on the standard flag") {
  auto d = flag({1, 2, 3, 4, 5});
  auto s = LocalOperator::from_top(d, diag({1.0, 2.0, 3.0, 4.0, 5.0}));
  for (int n = 1; n <= 5; ++n) CHECK(uniform_seminorm(s, n - 1) == doctest::Approx(n).epsilon(1e-14));
}

TEST_CASE("from_blocks") {
  auto d = flag({1, 2});
  auto t = LocalOperator::from_blocks(d, {one(1.0), diag({1.0, 2.0})});
  CHECK(t.top_matrix() == diag({1.0, 2.0}));
  CHECK(code_of([&] { LocalOperator::from_blocks(d, {one(5.0), diag({1.0, 2.0})}); }) ==
        ErrorCode::BlockIncompatible);
  CHECK(code_of([&] { LocalOperator::from_blocks(d, {one(1.0)}); }).has_value());
}

TEST_CASE("diamond blocks decompose and reassemble exactly") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto dom = std::make_shared<const QuantizedDomain>(random_domain(rng, DirectedPoset::diamond(), 4));
    auto t = random_local_operator(rng, dom);
    auto back = LocalOperator::from_blocks(dom, t.blocks());
    CHECK(bitwise_equal(back.top_matrix(), t.top_matrix()));
    CHECK(bitwise_equal(back.blocks(), t.blocks()));
    CHECK(bitwise_equal(LocalOperator::from_top(dom, t.top_matrix()).blocks(), t.blocks()));
  }
}

TEST_CASE("restriction at the top is the top matrix") {
  Rng rng(1);
  auto dom = std::make_shared<const QuantizedDomain>(random_domain(rng, DirectedPoset::chain(3), 4));
  auto t = random_local_operator(rng, dom);
  CHECK(bitwise_equal(t.restrict(dom->top()), t.top_matrix()));
}

TEST_CASE("restriction maps compose and nest") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto poset = trial % 2 ? DirectedPoset::diamond() : DirectedPoset::chain(3);
    auto dom = std::make_shared<const QuantizedDomain>(random_domain(rng, poset, 4));
    auto t = random_local_operator(rng, dom);
    CHECK(family_compatibility_residual(*dom, t.blocks()) <= 1e-12);
    for (auto [a, b] : poset.order_pairs()) {
      // phi_{a,a} = Id.
      if (a == b) CHECK(bitwise_equal(restrict_block(*dom, a, a, t.restrict(a)), t.restrict(a)));
      // On canonical chains, T_a is the upper-left block of T_b exactly.
      if (poset.is_chain(poset.linear_extension()) && dom->is_prefix(a, b))
        CHECK(bitwise_equal(Matrix(t.restrict(b).topLeftCorner(dom->dim(a), dom->dim(a))), t.restrict(a)));
      for (std::size_t c = 0; c < poset.size(); ++c) {
        if (!poset.leq(b, c)) continue;
        const Matrix two_step = restrict_block(*dom, a, b, restrict_block(*dom, b, c, t.restrict(c)));
        CHECK(max_abs(two_step - restrict_block(*dom, a, c, t.restrict(c))) <= 1e-12);
      }
    }
  }
}

TEST_CASE("seminorms on the flag (1,2)") {
  auto d = flag({1, 2});
  auto t = LocalOperator::from_top(d, diag({1.0, 3.0}));
  CHECK(uniform_seminorm(t, 0) == doctest::Approx(1.0));
  CHECK(uniform_seminorm(t, 1) == doctest::Approx(3.0));
  auto id = LocalOperator::identity(d);
  CHECK(uniform_seminorm(id, 0) == doctest::Approx(1.0));
  CHECK(uniform_seminorm(id, 1) == doctest::Approx(1.0));

  Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
  e1(0) = 1.0;
  e2(1) = 1.0;
  auto s1 = seminorm(t, Seminorm::strong(e1));
  CHECK(s1.value == doctest::Approx(1.0));
  CHECK(s1.level == 0);
  auto s2 = seminorm(t, Seminorm::strong(e2));
  CHECK(s2.value == doctest::Approx(3.0));
  CHECK(s2.level == 1);
  CHECK(seminorm(t, Seminorm::weak(e2, e2)).value == doctest::Approx(3.0));
  CHECK(seminorm(t, Seminorm::weak(e1, e2)).value == doctest::Approx(0.0));
  CHECK(code_of([&] { seminorm(t, Seminorm::strong(Vector::Zero(3))); }) == ErrorCode::VectorOutsideDomain);
  CHECK(code_of([&] { t.restrict("9"); }) == ErrorCode::UnknownElement);
}

TEST_CASE("C*-seminorm laws on random operators") {
  Rng rng(555);
  for (int trial = 0; trial < 30; ++trial) {
    const auto poset = trial % 3 == 0 ? DirectedPoset::diamond() : DirectedPoset::chain(1 + trial % 3);
    auto dom = std::make_shared<const QuantizedDomain>(random_domain(rng, poset, 4));
    auto t = random_local_operator(rng, dom);
    auto s = random_local_operator(rng, dom);
    for (std::size_t a = 0; a < poset.size(); ++a) {
      const double p = uniform_seminorm(t, a);
      CHECK(std::abs(uniform_seminorm(adjoint(t), a) - p) <= 1e-10);
      CHECK(std::abs(uniform_seminorm(compose(adjoint(t), t), a) - p * p) <= 1e-8 * std::max(1.0, p * p));
      CHECK(uniform_seminorm(compose(t, s), a) <= p * uniform_seminorm(s, a) + 1e-9);
      CHECK(uniform_seminorm(add(t, s), a) <= p + uniform_seminorm(s, a) + 1e-12);
    }
    for (auto [a, b] : poset.order_pairs()) CHECK(uniform_seminorm(t, a) <= uniform_seminorm(t, b) + 1e-12);
  }
}

TEST_CASE("algebra operations") {
  auto d = flag({1, 2});
  auto t = LocalOperator::from_top(d, diag({Complex(0, 1), Complex(0, 2)}));
  CHECK(adjoint(t).top_matrix() == diag({Complex(0, -1), Complex(0, -2)}));
  CHECK(scale(2.0, t).restrict(0) == one(Complex(0, 2)));
  // Structurally equal domains are interchangeable; different ones are not.
  CHECK(add(t, LocalOperator::identity(flag({1, 2}))).restrict(0) == one(Complex(1, 1)));
  CHECK(code_of([&] { add(t, LocalOperator::identity(flag({2, 2}))); }) == ErrorCode::DomainMismatch);
  CHECK(LocalOperator::zero(d).top_matrix().isZero(0.0));

  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto dom = std::make_shared<const QuantizedDomain>(random_domain(rng, DirectedPoset::diamond(), 4));
    auto a = random_local_operator(rng, dom), b = random_local_operator(rng, dom);
    CHECK(bitwise_equal(adjoint(adjoint(a)).top_matrix(), a.top_matrix()));
    auto ab = compose(a, b);
    CHECK(max_abs(ab.top_matrix() - a.top_matrix() * b.top_matrix()) <= 1e-12);
    for (std::size_t l = 0; l < dom->poset().size(); ++l) {
      CHECK(max_abs(ab.restrict(l) - a.restrict(l) * b.restrict(l)) <= 1e-12);
      CHECK(max_abs(adjoint(a).restrict(l) - a.restrict(l).adjoint()) <= 1e-12);
    }
  }
}

TEST_CASE("ambient matrix agrees with the level projections") {
  Rng rng(3);
  auto dom = std::make_shared<const QuantizedDomain>(random_domain(rng, DirectedPoset::diamond(), 4));
  auto t = random_local_operator(rng, dom);
  const Matrix m = t.ambient_matrix();
  for (std::size_t l = 0; l < dom->poset().size(); ++l) {
    const Matrix p = dom->projection(l);
    CHECK(max_abs(m * p - p * m) <= 1e-12);
  }
  CHECK(reducing_residual(*dom, t.top_matrix()).residual <= 1e-12);
}

TEST_CASE("lazy chain truncations") {
  auto s = lazy_rule("diag_n", 32);
  CHECK(lazy_truncate(s, 5).top_matrix() == diag({1.0, 2.0, 3.0, 4.0, 5.0}));
  for (int n = 1; n <= 32; ++n) {
    auto t = lazy_truncate(s, n);
    CHECK(std::abs(uniform_seminorm(t, t.domain()->top()) - n) <= 1e-9);
  }
  const auto t7 = lazy_truncate(s, 7), t5 = lazy_truncate(s, 5);
  CHECK(bitwise_equal(t7.restrict("5"), t5.top_matrix()));
  CHECK(code_of([&] { lazy_truncate(s, 33); }) == ErrorCode::DepthExceeded);

  auto id = lazy_rule("identity", 6);
  for (int n = 1; n <= 6; ++n) {
    const auto t = lazy_truncate(id, n);
    CHECK(t.top_matrix() == Matrix::Identity(t.top_matrix().rows(), t.top_matrix().cols()));
  }
  auto sw = lazy_rule("shift_pairs", 3);
  auto t3 = lazy_truncate(sw, 3);
  CHECK(t3.top_matrix().rows() == 6);
  CHECK(max_abs(t3.top_matrix() * t3.top_matrix() - Matrix::Identity(6, 6)) == 0.0);
  CHECK(code_of([] { lazy_rule("nope", 3); }) == ErrorCode::UnresolvedReference);
  CHECK(lazy_rule_names().size() == 3);
}
