#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arfpf/bits.hpp"
#include "arfpf/graph.hpp"

namespace arfpf {

// Cyclic order of half-edges around each vertex. Orders are read
// counterclockwise; with that convention the face walk below traverses
// bounded planar faces clockwise.
class RotationSystem {
 public:
  RotationSystem() = default;
  explicit RotationSystem(std::vector<std::vector<int>> cyclic_orders) : orders_(std::move(cyclic_orders)) {}

  int vertex_count() const { return static_cast<int>(orders_.size()); }
  const std::vector<int>& at(int v) const { return orders_[static_cast<std::size_t>(v)]; }
  const std::vector<std::vector<int>>& orders() const { return orders_; }

  // Throws StructuralError naming the first vertex whose order is not a
  // permutation of its incident half-edges.
  void validate(const Multigraph& g) const;

  // successor[h] = half-edge following h around its vertex.
  std::vector<int> successors(int half_edge_count) const;

  RotationSystem reversed() const;

  friend bool operator==(const RotationSystem& a, const RotationSystem& b) = default;

 private:
  std::vector<std::vector<int>> orders_;
};

// Faces of the cellular embedding determined by a rotation system.
// A dart is a half-edge h read as "leave endpoint(h) along edge_of(h)".
struct FaceStructure {
  std::vector<std::vector<int>> faces;  // isolated vertices get one empty face
  std::vector<EdgeSubset> boundaries;   // edges traversed an odd number of times
  int components = 0;
  std::vector<int> component_genus;
  int genus = 0;  // sum over components

  int face_count() const { return static_cast<int>(faces.size()); }
};

FaceStructure trace_faces(const Multigraph& g, const RotationSystem& rot);

inline int genus_of(const Multigraph& g, const RotationSystem& rot) { return trace_faces(g, rot).genus; }

// Cyclic word of half-edges left at the single vertex after contracting a
// spanning tree; each non-tree edge appears twice.
struct ReducedWord {
  std::vector<int> letters;

  // Edge ids of the word in order of appearance (each twice).
  std::vector<int> edges() const;
};

ReducedWord one_vertex_reduction(const Multigraph& g, const RotationSystem& rot, const EdgeSubset& tree);

// The one-vertex ribbon graph spelled by a reduced word; loop i is the i-th
// distinct edge in increasing id order.
std::pair<Multigraph, RotationSystem> word_ribbon_graph(const ReducedWord& word);

// 1 iff the occurrences of e and f interleave in the cyclic word (e..f..e..f).
bool intersection_parity(const std::vector<int>& word_edges, int e, int f);

// F2 homology of the closed surface with a symplectic basis and per-edge
// classes. Coordinates are ordered a_1, b_1, ..., a_g, b_g.
struct HomologyData {
  int genus = 0;
  EdgeSubset tree;
  std::vector<int> loop_edges;         // non-tree edges, increasing id
  std::vector<int> loop_index;         // edge id -> position in loop_edges, or -1
  std::vector<BitVec> face_boundaries; // one per face, in loop coordinates
  std::vector<BitVec> loop_gram;       // interleaving form on loop coordinates
  std::vector<BitVec> symplectic;      // a_1, b_1, ..., a_g, b_g in loop coordinates
  std::vector<BitVec> edge_class;      // edge id -> class, 2g bits; zero on tree edges
  std::vector<BitVec> intersection;    // Gram matrix of the symplectic basis

  int dimension() const { return 2 * genus; }
  BitVec zero_class() const { return BitVec(static_cast<std::size_t>(dimension())); }
  BitVec class_of(const EdgeSubset& subset) const;
  BitVec class_of_edges(const std::vector<int>& edges) const;
};

// Requires a connected graph. `required_tree_edges` are forced into the
// spanning tree.
HomologyData homology_data(const Multigraph& g, const RotationSystem& rot, const EdgeSubset& required_tree_edges);
HomologyData homology_data(const Multigraph& g, const RotationSystem& rot);

// Mod-2 intersection number of two classes in symplectic coordinates.
bool intersect(const BitVec& x, const BitVec& y);

// Number of rotation systems, saturating at UINT64_MAX.
std::uint64_t rotation_system_count(const Multigraph& g);

// Exhaustive search for a rotation of minimum genus. Throws CapacityError
// when more than `limit` rotation systems would be examined.
RotationSystem minimum_genus_rotation(const Multigraph& g, std::uint64_t limit = 1'000'000);

}  // namespace arfpf
