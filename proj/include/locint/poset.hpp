#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace locint {

/// Finite directed partially ordered set.
///
/// Elements are opaque string labels. Their position in `elements()` is the
/// fixed total ordering used for every deterministic tie-break (upper bounds,
/// parent selection in filtrations, report ordering).
class DirectedPoset {
 public:
  using Index = std::size_t;

  /// Validates an explicit order matrix. The relation must already be a
  /// partial order; no closure is applied.
  static DirectedPoset validate(std::vector<std::string> elements,
                                std::vector<std::vector<bool>> relation);

  /// Builds the order generated by `covers` (pairs a <= b) under reflexive
  /// transitive closure, then validates it.
  static DirectedPoset from_covers(std::vector<std::string> elements,
                                   const std::vector<std::pair<std::string, std::string>>& covers);

  /// Chain "1" <= "2" <= ... <= "n".
  static DirectedPoset chain(std::size_t length);
  /// bot <= a, bot <= b, a <= top, b <= top.
  static DirectedPoset diamond();

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::string& label(Index i) const { return elements_.at(i); }
  Index index_of(const std::string& label) const;
  bool contains(const std::string& label) const;

  bool leq(Index a, Index b) const { return relation_[a][b]; }
  bool less(Index a, Index b) const { return a != b && relation_[a][b]; }
  bool comparable(Index a, Index b) const { return leq(a, b) || leq(b, a); }

  Index top() const noexcept { return top_; }

  /// Deterministic upper bound: the first (in element order) among the
  /// minimal upper bounds of {a, b}.
  Index upper_bound(Index a, Index b) const;

  /// Induced sub-poset {x : x <= beta}.
  DirectedPoset branch(Index beta) const;
  DirectedPoset branch(const std::string& beta) const { return branch(index_of(beta)); }

  /// Strictly-below elements, in element order.
  std::vector<Index> below(Index b) const;
  /// Lower covers of b: a < b with nothing strictly between.
  std::vector<Index> lower_covers(Index b) const;
  /// All cover pairs (a, b), ordered by b then a.
  std::vector<std::pair<Index, Index>> cover_pairs() const;
  /// All pairs a <= b including a == b.
  std::vector<std::pair<Index, Index>> order_pairs() const;

  /// Parent of b in the canonical spanning tree of the filtration: the
  /// first lower cover in element order. Returns size() for minimal b.
  Index parent(Index b) const;

  /// Elements sorted so that every element comes after all elements below
  /// it; ties broken by element order.
  std::vector<Index> linear_extension() const;

  /// True when the sequence is strictly increasing in the order.
  bool is_chain(const std::vector<Index>& sequence) const;

  const std::vector<std::vector<bool>>& relation() const noexcept { return relation_; }

  friend bool operator==(const DirectedPoset&, const DirectedPoset&) = default;

 private:
  DirectedPoset() = default;

  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> relation_;
  Index top_ = 0;
};

}  // namespace locint
