#include "arfpf/surface.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

namespace arfpf {

void RotationSystem::validate(const Multigraph& g) const {
  if (vertex_count() != g.vertex_count()) {
    throw StructuralError("rotation system covers " + std::to_string(vertex_count()) + " vertices, graph has " +
                          std::to_string(g.vertex_count()));
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> sorted = at(v);
    std::sort(sorted.begin(), sorted.end());
    if (sorted != g.incident(v)) {
      throw StructuralError("rotation at vertex " + std::to_string(v) +
                            " is not a permutation of its incident half-edges");
    }
  }
}

std::vector<int> RotationSystem::successors(int half_edge_count) const {
  std::vector<int> next(static_cast<std::size_t>(half_edge_count), -1);
  for (const auto& order : orders_) {
    for (std::size_t i = 0; i < order.size(); ++i) next[order[i]] = order[(i + 1) % order.size()];
  }
  return next;
}

RotationSystem RotationSystem::reversed() const {
  auto orders = orders_;
  for (auto& o : orders) std::reverse(o.begin(), o.end());
  return RotationSystem(std::move(orders));
}

FaceStructure trace_faces(const Multigraph& g, const RotationSystem& rot) {
  rot.validate(g);
  const auto next = rot.successors(g.half_edge_count());
  const Components comps = connected_components(g);

  FaceStructure out;
  out.components = comps.count;
  std::vector<int> faces_in(static_cast<std::size_t>(comps.count), 0);
  std::vector<int> vertices_in(static_cast<std::size_t>(comps.count), 0);
  std::vector<int> edges_in(static_cast<std::size_t>(comps.count), 0);
  for (int v = 0; v < g.vertex_count(); ++v) ++vertices_in[comps.of_vertex[v]];
  for (int e = 0; e < g.edge_count(); ++e) ++edges_in[comps.of_vertex[g.ends(e).first]];

  std::vector<char> used(static_cast<std::size_t>(g.half_edge_count()), 0);
  for (int start = 0; start < g.half_edge_count(); ++start) {
    if (used[start]) continue;
    std::vector<int> face;
    EdgeSubset boundary = g.empty_subset();
    int dart = start;
    do {
      used[dart] = 1;
      face.push_back(dart);
      boundary.flip(edge_of(dart));
      dart = next[opposite(dart)];
    } while (dart != start);
    ++faces_in[comps.of_vertex[g.endpoint(start)]];
    out.faces.push_back(std::move(face));
    out.boundaries.push_back(std::move(boundary));
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) {
      ++faces_in[comps.of_vertex[v]];
      out.faces.emplace_back();
      out.boundaries.push_back(g.empty_subset());
    }
  }

  for (int c = 0; c < comps.count; ++c) {
    const int twice_genus = 2 - vertices_in[c] + edges_in[c] - faces_in[c];
    if (twice_genus < 0 || twice_genus % 2 != 0) {
      throw InvariantViolation("Euler characteristic of component " + std::to_string(c) + " is inconsistent");
    }
    out.component_genus.push_back(twice_genus / 2);
    out.genus += twice_genus / 2;
  }
  return out;
}

std::vector<int> ReducedWord::edges() const {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int h : letters) out.push_back(edge_of(h));
  return out;
}

ReducedWord one_vertex_reduction(const Multigraph& g, const RotationSystem& rot, const EdgeSubset& tree) {
  rot.validate(g);
  const int n = g.vertex_count();
  if (n == 0) return {};
  if (static_cast<int>(tree.count()) != n - 1) {
    throw StructuralError("tree has " + std::to_string(tree.count()) + " edges, a spanning tree needs " +
                          std::to_string(n - 1));
  }
  // Walk the tree from vertex 0, splicing each newly reached vertex into the
  // growing merged rotation in place of the connecting half-edge.
  std::vector<int> merged = rot.at(0);
  std::vector<char> reached(static_cast<std::size_t>(n), 0);
  reached[0] = 1;
  int reached_count = 1;
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    const int x = frontier.front();
    frontier.pop();
    for (int h : g.incident(x)) {
      if (!tree.test(edge_of(h))) continue;
      const int h_far = opposite(h);
      const int y = g.endpoint(h_far);
      if (reached[y]) {
        if (y == x || std::find(merged.begin(), merged.end(), h) != merged.end()) {
          throw StructuralError("tree edges contain a cycle through edge " + std::to_string(edge_of(h)));
        }
        continue;
      }
      reached[y] = 1;
      ++reached_count;
      frontier.push(y);

      const auto at = std::find(merged.begin(), merged.end(), h);
      std::vector<int> spliced;
      spliced.reserve(merged.size() + rot.at(y).size());
      spliced.insert(spliced.end(), std::next(at), merged.end());
      spliced.insert(spliced.end(), merged.begin(), at);
      const auto& around = rot.at(y);
      const auto pos = std::find(around.begin(), around.end(), h_far);
      spliced.insert(spliced.end(), std::next(pos), around.end());
      spliced.insert(spliced.end(), around.begin(), pos);
      merged = std::move(spliced);
    }
  }
  if (reached_count != n) throw StructuralError("tree does not span the graph");
  return ReducedWord{std::move(merged)};
}

std::pair<Multigraph, RotationSystem> word_ribbon_graph(const ReducedWord& word) {
  std::vector<int> ids = word.edges();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::pair<int, int>> loops(ids.size(), {0, 0});
  std::vector<int> order;
  order.reserve(word.letters.size());
  for (int h : word.letters) {
    const int local = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), edge_of(h)) - ids.begin());
    order.push_back(half_edge(local, side_of(h)));
  }
  return {Multigraph(1, loops), RotationSystem({order})};
}

bool intersection_parity(const std::vector<int>& word_edges, int e, int f) {
  if (e == f) throw InputError("intersection parity is defined for distinct edges only");
  std::vector<int> pe, pf;
  for (std::size_t i = 0; i < word_edges.size(); ++i) {
    if (word_edges[i] == e) pe.push_back(static_cast<int>(i));
    if (word_edges[i] == f) pf.push_back(static_cast<int>(i));
  }
  if (pe.size() != 2 || pf.size() != 2) throw InputError("edge does not occur exactly twice in the word");
  const bool first_inside = pe[0] < pf[0] && pf[0] < pe[1];
  const bool second_inside = pe[0] < pf[1] && pf[1] < pe[1];
  return first_inside != second_inside;
}

BitVec HomologyData::class_of(const EdgeSubset& subset) const {
  BitVec x = zero_class();
  for (int e : subset.indices()) x ^= edge_class[e];
  return x;
}

BitVec HomologyData::class_of_edges(const std::vector<int>& edges) const {
  BitVec x = zero_class();
  for (int e : edges) x ^= edge_class[e];
  return x;
}

bool intersect(const BitVec& x, const BitVec& y) {
  bool acc = false;
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) acc ^= (x.test(i) && y.test(i + 1)) != (x.test(i + 1) && y.test(i));
  return acc;
}

namespace {

BitVec gram_apply(const std::vector<BitVec>& gram, const BitVec& v) {
  BitVec out(gram.size());
  for (std::size_t i = 0; i < gram.size(); ++i)
    if (dot(gram[i], v)) out.set(i);
  return out;
}

}  // namespace

HomologyData homology_data(const Multigraph& g, const RotationSystem& rot, const EdgeSubset& required_tree_edges) {
  const FaceStructure faces = trace_faces(g, rot);
  if (faces.components > 1) throw InputError("homology_data requires a connected graph");

  HomologyData hd;
  hd.genus = faces.genus;
  const CycleBasis basis = cycle_basis(g, required_tree_edges);
  hd.tree = basis.forest;
  hd.loop_edges = basis.non_forest_edges;
  const std::size_t k = hd.loop_edges.size();
  hd.loop_index.assign(static_cast<std::size_t>(g.edge_count()), -1);
  for (std::size_t i = 0; i < k; ++i) hd.loop_index[hd.loop_edges[i]] = static_cast<int>(i);

  // Interleaving form of the loops left after contracting the tree.
  const ReducedWord word = one_vertex_reduction(g, rot, hd.tree);
  std::vector<std::pair<int, int>> where(k, {-1, -1});
  for (std::size_t p = 0; p < word.letters.size(); ++p) {
    auto& slot = where[static_cast<std::size_t>(hd.loop_index[edge_of(word.letters[p])])];
    (slot.first < 0 ? slot.first : slot.second) = static_cast<int>(p);
  }
  hd.loop_gram.assign(k, BitVec(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto [a0, a1] = where[i];
      const auto [b0, b1] = where[j];
      if ((a0 < b0 && b0 < a1) != (a0 < b1 && b1 < a1)) {
        hd.loop_gram[i].set(j);
        hd.loop_gram[j].set(i);
      }
    }
  }

  for (const EdgeSubset& boundary : faces.boundaries) {
    BitVec coords(k);
    for (int e : boundary.indices())
      if (hd.loop_index[e] >= 0) coords.set(static_cast<std::size_t>(hd.loop_index[e]));
    if (gram_apply(hd.loop_gram, coords).any()) throw InvariantViolation("a face boundary pairs nontrivially with a cycle");
    hd.face_boundaries.push_back(std::move(coords));
  }

  // Symplectic Gram-Schmidt, lowest index first.
  std::vector<BitVec> pending;
  pending.reserve(k);
  for (std::size_t i = 0; i < k; ++i) pending.push_back(BitVec::from_indices(k, {static_cast<int>(i)}));
  std::size_t radical = 0;
  while (!pending.empty()) {
    const BitVec a = pending.front();
    const BitVec omega_a = gram_apply(hd.loop_gram, a);
    std::size_t partner = 0;
    for (std::size_t j = 1; j < pending.size() && partner == 0; ++j)
      if (dot(pending[j], omega_a)) partner = j;
    if (partner == 0) {
      pending.erase(pending.begin());
      ++radical;
      continue;
    }
    const BitVec b = pending[partner];
    const BitVec omega_b = gram_apply(hd.loop_gram, b);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(partner));
    pending.erase(pending.begin());
    for (BitVec& v : pending) {
      const bool with_a = dot(v, omega_a);
      const bool with_b = dot(v, omega_b);
      if (with_b) v ^= a;
      if (with_a) v ^= b;
    }
    hd.symplectic.push_back(a);
    hd.symplectic.push_back(b);
  }
  if (static_cast<int>(hd.symplectic.size()) != 2 * hd.genus ||
      static_cast<int>(radical) != faces.face_count() - 1) {
    throw InvariantViolation("symplectic rank " + std::to_string(hd.symplectic.size()) +
                             " disagrees with twice the Euler genus " + std::to_string(2 * hd.genus));
  }

  // Coordinates of a loop vector z: z.b_i on a_i, z.a_i on b_i.
  const std::size_t dim = hd.symplectic.size();
  std::vector<BitVec> pairing;
  pairing.reserve(dim);
  for (std::size_t i = 0; i < dim; i += 2) {
    pairing.push_back(gram_apply(hd.loop_gram, hd.symplectic[i + 1]));
    pairing.push_back(gram_apply(hd.loop_gram, hd.symplectic[i]));
  }
  hd.edge_class.assign(static_cast<std::size_t>(g.edge_count()), BitVec(dim));
  for (std::size_t t = 0; t < k; ++t) {
    BitVec& x = hd.edge_class[hd.loop_edges[t]];
    for (std::size_t c = 0; c < dim; ++c)
      if (pairing[c].test(t)) x.set(c);
  }

  hd.intersection.assign(dim, BitVec(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const BitVec omega = gram_apply(hd.loop_gram, hd.symplectic[i]);
    for (std::size_t j = 0; j < dim; ++j)
      if (dot(omega, hd.symplectic[j])) hd.intersection[i].set(j);
  }
  return hd;
}

HomologyData homology_data(const Multigraph& g, const RotationSystem& rot) {
  return homology_data(g, rot, g.empty_subset());
}

std::uint64_t rotation_system_count(const Multigraph& g) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int f = 2; f < g.degree(v); ++f) {
      if (total > kMax / static_cast<std::uint64_t>(f)) return kMax;
      total *= static_cast<std::uint64_t>(f);
    }
  }
  return total;
}

RotationSystem minimum_genus_rotation(const Multigraph& g, std::uint64_t limit) {
  const std::uint64_t count = rotation_system_count(g);
  if (count > limit) {
    throw CapacityError("minimum-genus search needs " + std::to_string(count) + " rotation systems, limit is " +
                        std::to_string(limit));
  }
  // The first half-edge at each vertex stays fixed; the tails run through
  // all permutations like an odometer.
  std::vector<std::vector<int>> orders;
  for (int v = 0; v < g.vertex_count(); ++v) orders.push_back(g.incident(v));
  RotationSystem best(orders);
  int best_genus = genus_of(g, best);
  while (best_genus > 0) {
    int v = 0;
    for (; v < g.vertex_count(); ++v) {
      auto& o = orders[v];
      if (o.size() > 2 && std::next_permutation(o.begin() + 1, o.end())) break;
    }
    if (v == g.vertex_count()) break;
    RotationSystem candidate(orders);
    const int genus = genus_of(g, candidate);
    if (genus < best_genus) {
      best_genus = genus;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace arfpf
