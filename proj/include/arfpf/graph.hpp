#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arfpf/bits.hpp"
#include "arfpf/errors.hpp"
#include "arfpf/scalar.hpp"

namespace arfpf {

// Half-edge ids: edge e owns half-edges 2e (side A) and 2e+1 (side B).
inline constexpr int half_edge(int edge, int side) { return 2 * edge + side; }
inline constexpr int edge_of(int h) { return h >> 1; }
inline constexpr int side_of(int h) { return h & 1; }
inline constexpr int opposite(int h) { return h ^ 1; }

using EdgeSubset = BitVec;

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

// Finite multigraph with dense edge ids; loops and parallel edges allowed.
// Immutable once built.
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(half_vertex_.size() / 2); }
  int half_edge_count() const { return static_cast<int>(half_vertex_.size()); }

  // Vertex carrying half-edge h.
  int endpoint(int h) const { return half_vertex_[static_cast<std::size_t>(h)]; }
  std::pair<int, int> ends(int e) const { return {endpoint(half_edge(e, 0)), endpoint(half_edge(e, 1))}; }
  bool is_loop(int e) const { return endpoint(half_edge(e, 0)) == endpoint(half_edge(e, 1)); }

  // Half-edges at v in increasing id order; loops contribute both halves.
  const std::vector<int>& incident(int v) const { return incident_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(incident(v).size()); }

  EdgeSubset empty_subset() const { return EdgeSubset(static_cast<std::size_t>(edge_count())); }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.half_vertex_ == b.half_vertex_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<int> half_vertex_;
  std::vector<std::vector<int>> incident_;
};

struct Components {
  int count = 0;
  std::vector<int> of_vertex;
};

Components connected_components(const Multigraph& g);

// Spanning forest plus one fundamental cycle per non-forest edge.
struct CycleBasis {
  EdgeSubset forest;
  std::vector<int> non_forest_edges;  // increasing edge id
  std::vector<EdgeSubset> cycles;     // cycles[i] closes non_forest_edges[i]
  int components = 0;

  int rank() const { return static_cast<int>(cycles.size()); }
};

// The forest contains every edge of `required`, which must be acyclic.
CycleBasis cycle_basis(const Multigraph& g, const EdgeSubset& required);
CycleBasis cycle_basis(const Multigraph& g);

// First vertex of odd degree in (V, subset), if any.
std::optional<int> first_odd_vertex(const Multigraph& g, const EdgeSubset& subset);
inline bool is_even(const Multigraph& g, const EdgeSubset& subset) { return !first_odd_vertex(g, subset); }

// Streams every even subset exactly once (Gray-code walk over the cycle
// basis), starting with the empty set.
class EvenSubsetStream {
 public:
  explicit EvenSubsetStream(const Multigraph& g, std::uint64_t cap = kDefaultEnumerationCap);
  EvenSubsetStream(CycleBasis basis, std::uint64_t cap);

  std::optional<EdgeSubset> next();
  std::uint64_t total() const { return total_; }

 private:
  CycleBasis basis_;
  EdgeSubset current_;
  std::uint64_t emitted_ = 0;
  std::uint64_t total_ = 0;
};

// Throws CapacityError unless 2^rank <= cap.
std::uint64_t checked_subset_count(int rank, std::uint64_t cap);

// Throws InputError naming the first edge without a weight.
void check_weight_count(int edge_count, Eigen::Index supplied);
inline void check_weight_count(const Multigraph& g, Eigen::Index supplied) { check_weight_count(g.edge_count(), supplied); }

// Calls fn(matching edge ids) for every perfect matching, searching the
// lowest uncovered vertex first. Returning false from fn stops the search.
void for_each_perfect_matching(const Multigraph& g, const std::function<bool(const std::vector<int>&)>& fn);

// Sum over even subsets of the product of edge weights.
template <typename Scalar>
Scalar even_poly_oracle(const Multigraph& g, const VectorX<Scalar>& w, std::uint64_t cap = kDefaultEnumerationCap) {
  check_weight_count(g, w.size());
  EvenSubsetStream stream(g, cap);
  Scalar total(0);
  while (auto subset = stream.next()) {
    Scalar term(1);
    for (int e : subset->indices()) term *= w[e];
    total += term;
  }
  return total;
}

// Sum over perfect matchings of the product of edge weights.
template <typename Scalar>
Scalar matching_oracle(const Multigraph& g, const VectorX<Scalar>& w) {
  check_weight_count(g, w.size());
  Scalar total(0);
  for_each_perfect_matching(g, [&](const std::vector<int>& m) {
    Scalar term(1);
    for (int e : m) term *= w[e];
    total += term;
    return true;
  });
  return total;
}

std::uint64_t count_perfect_matchings(const Multigraph& g);

}  // namespace arfpf
