#include "arfpf/fisher.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>

namespace arfpf {

bool clockwise_odd(const std::vector<int>& face, const Orientation& d) {
  bool parity = false;
  for (int dart : face) parity ^= dart_agrees(dart, d);
  return parity;
}

Orientation kasteleyn_orientation(const Multigraph& g, const std::vector<std::vector<int>>& bounded_faces,
                                  const EdgeSubset& tree) {
  Orientation d = g.empty_subset();
  EdgeSubset fixed = tree;
  std::vector<char> done(bounded_faces.size(), 0);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t f = 0; f < bounded_faces.size(); ++f) {
      if (done[f]) continue;
      int open = -1;
      int open_count = 0;
      for (int dart : bounded_faces[f]) {
        if (!fixed.test(edge_of(dart))) {
          if (open != edge_of(dart)) ++open_count;
          open = edge_of(dart);
        }
      }
      if (open_count > 1) continue;
      if (open_count == 1) {
        if (!clockwise_odd(bounded_faces[f], d)) d.flip(open);
        fixed.set(open);
      }
      if (!clockwise_odd(bounded_faces[f], d)) throw InvariantViolation("Kasteleyn propagation left an even face");
      done[f] = 1;
      progress = true;
    }
  }
  if (std::find(done.begin(), done.end(), 0) != done.end())
    throw InvariantViolation("Kasteleyn propagation did not reach every bounded face");
  return d;
}

GadgetLayout gadget_layout(int degree) {
  if (degree < 1) throw InputError("gadget degree must be positive");
  const int len = 6 * degree;
  GadgetLayout out;
  out.degree = degree;

  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t + 1 < len; ++t) {
    out.path_edges.push_back(static_cast<int>(edges.size()));
    edges.emplace_back(t, t + 1);
  }
  for (int j = 0; j < 2 * degree; ++j) {
    out.chord_edges.push_back(static_cast<int>(edges.size()));
    edges.emplace_back(3 * j, 3 * j + 2);
  }
  for (int i = 0; i < degree; ++i) {
    out.stub_edges.push_back(static_cast<int>(edges.size()));
    edges.emplace_back(6 * i + 1, len + i);
  }
  out.graph = Multigraph(len + degree, edges);

  // Counterclockwise from east: next on the path, chord above, previous on
  // the path, stub below.
  std::vector<std::vector<int>> orders(static_cast<std::size_t>(len + degree));
  for (int t = 0; t < len; ++t) {
    auto& o = orders[t];
    if (t + 1 < len) o.push_back(half_edge(out.path_edges[t], 0));
    if (t % 3 == 0) o.push_back(half_edge(out.chord_edges[t / 3], 0));
    if (t % 3 == 2) o.push_back(half_edge(out.chord_edges[(t - 2) / 3], 1));
    if (t > 0) o.push_back(half_edge(out.path_edges[t - 1], 1));
    if (t % 6 == 1) o.push_back(half_edge(out.stub_edges[(t - 1) / 6], 0));
  }
  for (int i = 0; i < degree; ++i) orders[len + i].push_back(half_edge(out.stub_edges[i], 1));
  out.rotation = RotationSystem(std::move(orders));

  const FaceStructure faces = trace_faces(out.graph, out.rotation);
  if (faces.genus != 0) throw InvariantViolation("gadget layout is not planar");
  // The outer face is the one walking along the stubs.
  const int first_stub = out.stub_edges.front();
  for (const auto& face : faces.faces) {
    const bool outer = std::any_of(face.begin(), face.end(), [&](int dart) { return edge_of(dart) >= first_stub; });
    if (!outer && !face.empty()) out.bounded_faces.push_back(face);
  }
  EdgeSubset tree = out.graph.empty_subset();
  for (int e : out.path_edges) tree.set(e);
  out.kasteleyn = kasteleyn_orientation(out.graph, out.bounded_faces, tree);
  return out;
}

namespace {

const GadgetLayout& cached_layout(std::map<int, GadgetLayout>& cache, int degree) {
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, gadget_layout(degree)).first;
  return it->second;
}

}  // namespace

EdgeSubset FisherBlowup::gadget_path_edges() const {
  EdgeSubset paths = graph.empty_subset();
  for (const Gadget& gadget : gadgets)
    for (int e : gadget.path_edges) paths.set(e);
  return paths;
}

LinearOrders derive_sigma(const RotationSystem& rot) {
  LinearOrders sigma;
  sigma.reserve(static_cast<std::size_t>(rot.vertex_count()));
  for (const auto& order : rot.orders()) {
    std::vector<int> linear = order;
    std::rotate(linear.begin(), std::min_element(linear.begin(), linear.end()), linear.end());
    sigma.push_back(std::move(linear));
  }
  return sigma;
}

FisherBlowup blow_up(const Multigraph& g, const LinearOrders& sigma) {
  if (static_cast<int>(sigma.size()) != g.vertex_count()) throw InputError("sigma must list every vertex");
  FisherBlowup out;
  out.host = g;
  out.sigma = sigma;
  out.gadgets.resize(static_cast<std::size_t>(g.vertex_count()));

  int next_vertex = 0;
  std::vector<int> attachment_of_half(static_cast<std::size_t>(g.half_edge_count()), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> check = sigma[v];
    std::sort(check.begin(), check.end());
    if (check != g.incident(v)) throw StructuralError("sigma at vertex " + std::to_string(v) + " is not a linear order of its half-edges");
    Gadget& gadget = out.gadgets[v];
    gadget.degree = g.degree(v);
    gadget.first_vertex = next_vertex;
    for (int i = 0; i < gadget.degree; ++i) {
      const int at = next_vertex + 6 * i + 1;
      gadget.attachments.push_back(at);
      attachment_of_half[sigma[v][i]] = at;
    }
    next_vertex += 6 * gadget.degree;
    out.host_of_vertex.insert(out.host_of_vertex.end(), static_cast<std::size_t>(6 * gadget.degree), v);
  }

  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < g.edge_count(); ++e)
    edges.emplace_back(attachment_of_half[half_edge(e, 0)], attachment_of_half[half_edge(e, 1)]);

  std::map<int, GadgetLayout> layouts;
  std::vector<std::pair<int, bool>> delta;
  for (int v = 0; v < g.vertex_count(); ++v) {
    Gadget& gadget = out.gadgets[v];
    if (gadget.degree == 0) continue;
    const GadgetLayout& layout = cached_layout(layouts, gadget.degree);
    const int base = gadget.first_vertex;
    for (std::size_t t = 0; t < layout.path_edges.size(); ++t) {
      gadget.path_edges.push_back(static_cast<int>(edges.size()));
      delta.emplace_back(static_cast<int>(edges.size()), layout.kasteleyn.test(layout.path_edges[t]));
      edges.emplace_back(base + static_cast<int>(t), base + static_cast<int>(t) + 1);
    }
    for (std::size_t j = 0; j < layout.chord_edges.size(); ++j) {
      gadget.chord_edges.push_back(static_cast<int>(edges.size()));
      delta.emplace_back(static_cast<int>(edges.size()), layout.kasteleyn.test(layout.chord_edges[j]));
      edges.emplace_back(base + 3 * static_cast<int>(j), base + 3 * static_cast<int>(j) + 2);
    }
  }
  out.graph = Multigraph(next_vertex, edges);
  out.gadget_orientation = out.graph.empty_subset();
  for (auto [e, bit] : delta) out.gadget_orientation.set(e, bit);
  return out;
}

RotationSystem blowup_rotation(const Multigraph& g, const RotationSystem& rot, const FisherBlowup& blowup) {
  rot.validate(g);
  if (derive_sigma(rot) != blowup.sigma) throw InputError("blow-up sigma was not derived from this rotation");
  std::vector<std::vector<int>> orders(static_cast<std::size_t>(blowup.graph.vertex_count()));
  std::map<int, GadgetLayout> layouts;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Gadget& gadget = blowup.gadgets[v];
    if (gadget.degree == 0) continue;
    const GadgetLayout& layout = cached_layout(layouts, gadget.degree);
    // Layout edge -> blown-up edge; stubs become the host half-edges.
    std::vector<int> edge_map(static_cast<std::size_t>(layout.graph.edge_count()), -1);
    for (std::size_t t = 0; t < layout.path_edges.size(); ++t) edge_map[layout.path_edges[t]] = gadget.path_edges[t];
    for (std::size_t j = 0; j < layout.chord_edges.size(); ++j) edge_map[layout.chord_edges[j]] = gadget.chord_edges[j];
    for (int t = 0; t < 6 * gadget.degree; ++t) {
      auto& o = orders[gadget.first_vertex + t];
      for (int h : layout.rotation.at(t)) {
        const int e = edge_of(h);
        const auto stub = std::find(layout.stub_edges.begin(), layout.stub_edges.end(), e);
        if (stub != layout.stub_edges.end()) {
          o.push_back(blowup.sigma[v][static_cast<std::size_t>(stub - layout.stub_edges.begin())]);
        } else {
          o.push_back(half_edge(edge_map[e], side_of(h)));
        }
      }
    }
  }
  RotationSystem out(std::move(orders));
  const int host_genus = genus_of(g, rot);
  const int blown_genus = genus_of(blowup.graph, out);
  if (host_genus != blown_genus) {
    throw InvariantViolation("blow-up changed the genus from " + std::to_string(host_genus) + " to " +
                             std::to_string(blown_genus));
  }
  return out;
}

namespace {

// Perfect matchings of the path-with-chords on `len` vertices avoiding the
// precovered vertices. state bit s marks vertex t+s as already matched.
struct GadgetMatcher {
  int len;
  const std::vector<char>& pre;
  std::vector<std::array<std::uint64_t, 8>> memo;
  std::vector<std::array<char, 8>> known;

  GadgetMatcher(int length, const std::vector<char>& precovered)
      : len(length), pre(precovered), memo(static_cast<std::size_t>(length) + 1), known(static_cast<std::size_t>(length) + 1) {
    for (auto& k : known) k.fill(0);
  }

  bool free_at(int t, unsigned state, unsigned bit) const { return t + static_cast<int>(bit) < len && !pre[t + bit] && !(state >> bit & 1U); }

  std::uint64_t count(int t, unsigned state) {
    if (t == len) return 1;
    if (known[t][state]) return memo[t][state];
    std::uint64_t total = 0;
    if (pre[t] || (state & 1U)) {
      total = count(t + 1, state >> 1);
    } else {
      if (free_at(t, state, 1)) total += count(t + 1, (state | 2U) >> 1);
      if (t % 3 == 0 && free_at(t, state, 2)) total += count(t + 1, (state | 4U) >> 1);
    }
    known[t][state] = 1;
    memo[t][state] = total;
    return total;
  }

  // Local pairs (t, t+1) or (t, t+2) of the unique completion.
  std::vector<std::pair<int, int>> witness() {
    std::vector<std::pair<int, int>> pairs;
    unsigned state = 0;
    for (int t = 0; t < len; ++t) {
      if (pre[t] || (state & 1U)) {
        state >>= 1;
        continue;
      }
      if (free_at(t, state, 1) && count(t + 1, (state | 2U) >> 1) > 0) {
        pairs.emplace_back(t, t + 1);
        state = (state | 2U) >> 1;
      } else {
        pairs.emplace_back(t, t + 2);
        state = (state | 4U) >> 1;
      }
    }
    return pairs;
  }
};

}  // namespace

std::uint64_t gadget_completion_count(int degree, const std::vector<bool>& covered_positions) {
  const int len = 6 * degree;
  std::vector<char> pre(static_cast<std::size_t>(len), 0);
  for (int i = 0; i < degree; ++i)
    if (covered_positions[static_cast<std::size_t>(i)]) pre[6 * i + 1] = 1;
  return GadgetMatcher(len, pre).count(0, 0);
}

std::vector<int> extend_even_to_matching(const FisherBlowup& blowup, const EdgeSubset& even) {
  const Multigraph& g = blowup.host;
  if (auto odd = first_odd_vertex(g, even)) {
    throw InputError("edge set is not even: gadget of vertex " + std::to_string(*odd) + " has odd parity");
  }
  std::vector<int> matching = even.indices();
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Gadget& gadget = blowup.gadgets[v];
    if (gadget.degree == 0) continue;
    const int len = 6 * gadget.degree;
    std::vector<char> pre(static_cast<std::size_t>(len), 0);
    for (int i = 0; i < gadget.degree; ++i)
      if (even.test(edge_of(blowup.sigma[v][i]))) pre[6 * i + 1] = 1;
    GadgetMatcher matcher(len, pre);
    const std::uint64_t completions = matcher.count(0, 0);
    if (completions != 1) {
      throw InvariantViolation("gadget of vertex " + std::to_string(v) + " has " + std::to_string(completions) +
                               " completions, expected exactly one");
    }
    for (auto [a, b] : matcher.witness()) {
      matching.push_back(b == a + 1 ? gadget.path_edges[a] : gadget.chord_edges[a / 3]);
    }
  }
  std::sort(matching.begin(), matching.end());
  return matching;
}

}  // namespace arfpf
