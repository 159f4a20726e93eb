#include <doctest.h>

#include "locint/error.hpp"
#include "locint/poset.hpp"
#include "support/expect_error.hpp"

using namespace locint;

using locint::testing::code_of;

TEST_CASE("chain of three is directed with top 3") {
  auto p = DirectedPoset::chain(3);
  CHECK(p.size() == 3);
  CHECK(p.label(p.top()) == "3");
  CHECK(p.leq(p.index_of("1"), p.index_of("3")));
  CHECK_FALSE(p.leq(p.index_of("3"), p.index_of("1")));
}

TEST_CASE("antichain is not directed") {
  CHECK(code_of([] { DirectedPoset::from_covers({"a", "b"}, {}); }) == ErrorCode::NotDirected);
}

TEST_CASE("explicit relations are validated without closure") {
  using R = std::vector<std::vector<bool>>;
  // 1 <= 2, 2 <= 3 but not 1 <= 3.
  R nontransitive = {{true, true, false}, {false, true, true}, {false, false, true}};
  CHECK(code_of([&] { DirectedPoset::validate({"1", "2", "3"}, nontransitive); }) ==
        ErrorCode::NotAPartialOrder);
  R cyclic = {{true, true}, {true, true}};
  CHECK(code_of([&] { DirectedPoset::validate({"a", "b"}, cyclic); }) == ErrorCode::NotAPartialOrder);
  R irreflexive = {{false}};
  CHECK(code_of([&] { DirectedPoset::validate({"a"}, irreflexive); }) == ErrorCode::NotAPartialOrder);
  R chain = {{true, true}, {false, true}};
  CHECK(DirectedPoset::validate({"a", "b"}, chain).label(1) == "b");
}

TEST_CASE("empty and duplicate element lists are rejected") {
  CHECK(code_of([] { DirectedPoset::from_covers({}, {}); }) == ErrorCode::NotDirected);
  CHECK(code_of([] { DirectedPoset::from_covers({"a", "a"}, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { DirectedPoset::from_covers({"a"}, {{"a", "z"}}); }) == ErrorCode::UnknownElement);
}

TEST_CASE("diamond") {
  auto d = DirectedPoset::diamond();
  CHECK(d.label(d.top()) == "top");
  const auto a = d.index_of("a"), b = d.index_of("b");
  CHECK_FALSE(d.comparable(a, b));
  CHECK(d.label(d.upper_bound(a, b)) == "top");
  CHECK(d.cover_pairs().size() == 4);
  // Order pairs: 4 reflexive + bot<a, bot<b, bot<top, a<top, b<top.
  CHECK(d.order_pairs().size() == 9);
  CHECK(d.label(d.parent(d.top())) == "a");
  CHECK(d.parent(d.index_of("bot")) == d.size());
}

TEST_CASE("upper bounds") {
  auto c = DirectedPoset::chain(3);
  CHECK(c.label(c.upper_bound(c.index_of("1"), c.index_of("3"))) == "3");
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.upper_bound(i, i) == i);
  auto d = DirectedPoset::diamond();
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.upper_bound(i, i) == i);
}

TEST_CASE("branches") {
  auto c = DirectedPoset::chain(3);
  auto b = c.branch("2");
  CHECK(b.elements() == std::vector<std::string>{"1", "2"});
  CHECK(b.label(b.top()) == "2");
  CHECK(b.is_chain({b.index_of("1"), b.index_of("2")}));

  auto d = DirectedPoset::diamond();
  auto ba = d.branch("a");
  CHECK(ba.elements() == std::vector<std::string>{"bot", "a"});
  CHECK(ba.leq(ba.index_of("bot"), ba.index_of("a")));

  auto single = d.branch("bot");
  CHECK(single.size() == 1);
  CHECK(single.top() == 0);
}

TEST_CASE("closure of covers") {
  auto p = DirectedPoset::from_covers({"x", "y", "z", "w"}, {{"x", "y"}, {"y", "z"}, {"z", "w"}});
  CHECK(p.leq(p.index_of("x"), p.index_of("w")));
  CHECK(p.lower_covers(p.index_of("w")) == std::vector<std::size_t>{p.index_of("z")});
  CHECK(p.below(p.index_of("z")).size() == 2);
}

TEST_CASE("linear extension respects the order") {
  auto d = DirectedPoset::diamond();
  auto ext = d.linear_extension();
  REQUIRE(ext.size() == 4);
  std::vector<std::size_t> pos(4);
  for (std::size_t i = 0; i < 4; ++i) pos[ext[i]] = i;
  for (auto [a, b] : d.order_pairs())
    if (a != b) CHECK(pos[a] < pos[b]);
  CHECK(d.is_chain({d.index_of("bot"), d.index_of("a"), d.index_of("top")}));
  CHECK_FALSE(d.is_chain({d.index_of("a"), d.index_of("b")}));
  CHECK_FALSE(d.is_chain({d.index_of("top"), d.index_of("a")}));
}

TEST_CASE("unknown labels") {
  CHECK(code_of([] { DirectedPoset::chain(2).index_of("9"); }) == ErrorCode::UnknownElement);
  CHECK_FALSE(DirectedPoset::chain(2).contains("9"));
}

TEST_CASE("finite directed posets have a unique greatest element") {
  // Every directed relation on up to 4 elements generated from random covers.
  for (unsigned mask = 0; mask < (1u << 6); ++mask) {
    std::vector<std::string> el = {"0", "1", "2", "3"};
    std::vector<std::pair<std::string, std::string>> covers;
    int bit = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++bit)
        if (mask & (1u << bit)) covers.emplace_back(el[i], el[j]);
    try {
      auto p = DirectedPoset::from_covers(el, covers);
      for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.leq(i, p.top()));
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
          const auto u = p.upper_bound(i, j);
          CHECK(p.leq(i, u));
          CHECK(p.leq(j, u));
        }
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotDirected);
    }
  }
}
