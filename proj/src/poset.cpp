#include "locint/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "locint/error.hpp"

namespace locint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorCode::NotDirected: return "NotDirected";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonMonotoneDims: return "NonMonotoneDims";
    case ErrorCode::InclusionViolation: return "InclusionViolation";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::FiberPosetMismatch: return "FiberPosetMismatch";
    case ErrorCode::LevelIncomparable: return "LevelIncomparable";
    case ErrorCode::NotAChain: return "NotAChain";
    case ErrorCode::NotLocallyBounded: return "NotLocallyBounded";
    case ErrorCode::BlockIncompatible: return "BlockIncompatible";
    case ErrorCode::VectorOutsideDomain: return "VectorOutsideDomain";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::FiberMismatch: return "FiberMismatch";
    case ErrorCode::MissingAtomValue: return "MissingAtomValue";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::GeneratorOutsideAmbient: return "GeneratorOutsideAmbient";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

DirectedPoset DirectedPoset::validate(std::vector<std::string> elements,
                                      std::vector<std::vector<bool>> relation) {
  const std::size_t n = elements.size();
  if (n == 0) throw Error(ErrorCode::NotDirected, "empty index set");
  if (std::set<std::string>(elements.begin(), elements.end()).size() != n)
    throw Error(ErrorCode::InvalidArgument, "duplicate element labels");
  if (relation.size() != n ||
      std::any_of(relation.begin(), relation.end(), [n](const auto& row) { return row.size() != n; }))
    throw Error(ErrorCode::InvalidArgument, "relation must be an elements x elements matrix");

  for (std::size_t i = 0; i < n; ++i)
    if (!relation[i][i]) throw Error(ErrorCode::NotAPartialOrder, "not reflexive at " + elements[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (relation[i][j] && relation[j][i])
        throw Error(ErrorCode::NotAPartialOrder,
                    "not antisymmetric: " + elements[i] + " and " + elements[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (relation[i][j])
        for (std::size_t k = 0; k < n; ++k)
          if (relation[j][k] && !relation[i][k])
            throw Error(ErrorCode::NotAPartialOrder, "not transitive: " + elements[i] + " <= " +
                                                         elements[j] + " <= " + elements[k]);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool bounded = false;
      for (std::size_t k = 0; k < n && !bounded; ++k) bounded = relation[i][k] && relation[j][k];
      if (!bounded)
        throw Error(ErrorCode::NotDirected, "no upper bound for " + elements[i] + " and " + elements[j]);
    }

  DirectedPoset p;
  p.elements_ = std::move(elements);
  p.relation_ = std::move(relation);
  // A finite directed poset has a greatest element.
  bool found = false;
  for (std::size_t t = 0; t < n && !found; ++t) {
    bool greatest = true;
    for (std::size_t i = 0; i < n; ++i) greatest = greatest && p.relation_[i][t];
    if (greatest) {
      p.top_ = t;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::NotDirected, "no greatest element");
  return p;
}

DirectedPoset DirectedPoset::from_covers(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& covers) {
  const std::size_t n = elements.size();
  auto find = [&](const std::string& label) {
    auto it = std::find(elements.begin(), elements.end(), label);
    if (it == elements.end()) throw Error(ErrorCode::UnknownElement, label);
    return static_cast<std::size_t>(it - elements.begin());
  };
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  for (const auto& [a, b] : covers) rel[find(a)][find(b)] = true;
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = true;
  return validate(std::move(elements), std::move(rel));
}

DirectedPoset DirectedPoset::chain(std::size_t length) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 1; i <= length; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 1) covers.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return from_covers(std::move(labels), covers);
}

DirectedPoset DirectedPoset::diamond() {
  return from_covers({"bot", "a", "b", "top"},
                     {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

DirectedPoset::Index DirectedPoset::index_of(const std::string& label) const {
  auto it = std::find(elements_.begin(), elements_.end(), label);
  if (it == elements_.end()) throw Error(ErrorCode::UnknownElement, label);
  return static_cast<Index>(it - elements_.begin());
}

bool DirectedPoset::contains(const std::string& label) const {
  return std::find(elements_.begin(), elements_.end(), label) != elements_.end();
}

DirectedPoset::Index DirectedPoset::upper_bound(Index a, Index b) const {
  const std::size_t n = size();
  if (a >= n || b >= n) throw Error(ErrorCode::UnknownElement, "index out of range");
  std::vector<Index> bounds;
  for (Index k = 0; k < n; ++k)
    if (leq(a, k) && leq(b, k)) bounds.push_back(k);
  for (Index u : bounds) {
    bool minimal = std::none_of(bounds.begin(), bounds.end(), [&](Index v) { return less(v, u); });
    if (minimal) return u;
  }
  return top_;  // unreachable after validation
}

DirectedPoset DirectedPoset::branch(Index beta) const {
  if (beta >= size()) throw Error(ErrorCode::UnknownElement, "index out of range");
  std::vector<Index> keep;
  for (Index i = 0; i < size(); ++i)
    if (leq(i, beta)) keep.push_back(i);
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> rel(keep.size(), std::vector<bool>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    labels.push_back(elements_[keep[i]]);
    for (std::size_t j = 0; j < keep.size(); ++j) rel[i][j] = relation_[keep[i]][keep[j]];
  }
  return validate(std::move(labels), std::move(rel));
}

std::vector<DirectedPoset::Index> DirectedPoset::below(Index b) const {
  std::vector<Index> out;
  for (Index a = 0; a < size(); ++a)
    if (less(a, b)) out.push_back(a);
  return out;
}

std::vector<DirectedPoset::Index> DirectedPoset::lower_covers(Index b) const {
  std::vector<Index> out;
  for (Index a : below(b)) {
    bool cover = true;
    for (Index c = 0; c < size() && cover; ++c) cover = !(less(a, c) && less(c, b));
    if (cover) out.push_back(a);
  }
  return out;
}

std::vector<std::pair<DirectedPoset::Index, DirectedPoset::Index>> DirectedPoset::cover_pairs() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index b = 0; b < size(); ++b)
    for (Index a : lower_covers(b)) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<DirectedPoset::Index, DirectedPoset::Index>> DirectedPoset::order_pairs() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index b = 0; b < size(); ++b)
    for (Index a = 0; a < size(); ++a)
      if (leq(a, b)) out.emplace_back(a, b);
  return out;
}

DirectedPoset::Index DirectedPoset::parent(Index b) const {
  auto covers = lower_covers(b);
  return covers.empty() ? size() : covers.front();
}

std::vector<DirectedPoset::Index> DirectedPoset::linear_extension() const {
  std::vector<Index> order(size());
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<std::size_t> depth(size());
  for (Index i = 0; i < size(); ++i) depth[i] = below(i).size();
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return depth[x] < depth[y]; });
  return order;
}

bool DirectedPoset::is_chain(const std::vector<Index>& sequence) const {
  for (Index i : sequence)
    if (i >= size()) return false;
  for (std::size_t k = 1; k < sequence.size(); ++k)
    if (!less(sequence[k - 1], sequence[k])) return false;
  return true;
}

}  // namespace locint
