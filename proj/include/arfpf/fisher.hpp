#pragma once

#include <cstdint>
#include <vector>

#include "arfpf/bits.hpp"
#include "arfpf/graph.hpp"
#include "arfpf/surface.hpp"

namespace arfpf {

// sigma[v] = linear order of the half-edges at v.
using LinearOrders = std::vector<std::vector<int>>;

// Orientation of a graph: bit e = 0 directs edge e from its side-A vertex to
// its side-B vertex, 1 reverses it.
using Orientation = BitVec;

// A dart (half-edge h read as leaving endpoint(h)) agrees with the
// orientation when it runs along the edge's direction.
inline bool dart_agrees(int dart, const Orientation& d) { return side_of(dart) == static_cast<int>(d.test(edge_of(dart))); }

// Odd number of boundary darts agreeing with the orientation.
bool clockwise_odd(const std::vector<int>& face, const Orientation& d);

// The path-with-chords gadget replacing one vertex of degree d, with the
// gadget vertices v_1..v_{6d} laid out left to right, chords above the path
// and one stub per incident half-edge hanging below v_{6i-4}.
struct GadgetLayout {
  int degree = 0;
  Multigraph graph;  // vertices 0..6d-1 on the path, 6d+i is the far end of stub i
  RotationSystem rotation;
  std::vector<int> path_edges;   // path_edges[t] joins t and t+1
  std::vector<int> chord_edges;  // chord_edges[j] joins 3j and 3j+2
  std::vector<int> stub_edges;   // stub_edges[i] joins 6i+1 and 6d+i
  std::vector<std::vector<int>> bounded_faces;
  Orientation kasteleyn;  // defined on path and chord edges; stub bits are 0
};

GadgetLayout gadget_layout(int degree);

// Kasteleyn orientation by face propagation: `tree` edges are fixed at bit 0
// and each remaining edge is set by a bounded face in which it is the last
// undetermined edge.
Orientation kasteleyn_orientation(const Multigraph& g, const std::vector<std::vector<int>>& bounded_faces,
                                  const EdgeSubset& tree);

struct Gadget {
  int degree = 0;
  int first_vertex = 0;           // blown-up vertex holding v_1
  std::vector<int> path_edges;    // v_t v_{t+1}
  std::vector<int> chord_edges;   // v_{3j-2} v_{3j}
  std::vector<int> attachments;   // blown-up vertex v_{6i-4} for sigma position i
};

// Fisher blow-up. Edge ids 0..m-1 of the blown-up graph are the images of the
// host edges (same id, same sides); gadget edges follow, vertex by vertex.
// Blown-up vertices are numbered gadget by gadget in host vertex order, path
// order inside each gadget.
struct FisherBlowup {
  Multigraph host;
  Multigraph graph;
  LinearOrders sigma;
  std::vector<Gadget> gadgets;         // by host vertex; degree 0 leaves it empty
  std::vector<int> host_of_vertex;     // blown-up vertex -> host vertex
  Orientation gadget_orientation;      // Delta on gadget edges, 0 on host edges

  int host_edge_count() const { return host.edge_count(); }
  bool is_gadget_edge(int e) const { return e >= host_edge_count(); }
  EdgeSubset gadget_path_edges() const;
};

LinearOrders derive_sigma(const RotationSystem& rot);

FisherBlowup blow_up(const Multigraph& g, const LinearOrders& sigma);

// Splices every gadget's disk rotation into the host rotation. Throws
// InvariantViolation if the genus changes.
RotationSystem blowup_rotation(const Multigraph& g, const RotationSystem& rot, const FisherBlowup& blowup);

// Number of perfect matchings of the gadget of degree d after removing the
// attachment vertices at the given sigma positions.
std::uint64_t gadget_completion_count(int degree, const std::vector<bool>& covered_positions);

// The unique perfect matching of the blown-up graph extending an even set,
// as increasing blown-up edge ids.
std::vector<int> extend_even_to_matching(const FisherBlowup& blowup, const EdgeSubset& even);

}  // namespace arfpf
