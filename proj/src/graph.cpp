#include "arfpf/graph.hpp"

#include <numeric>
#include <queue>
#include <sstream>

namespace arfpf {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Edges of the path between u and v inside the forest spanned by `forest`.
std::vector<int> forest_path(const Multigraph& g, const EdgeSubset& forest, int u, int v) {
  std::vector<int> via(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::queue<int> frontier;
  frontier.push(u);
  seen[u] = true;
  while (!frontier.empty()) {
    const int x = frontier.front();
    frontier.pop();
    if (x == v) break;
    for (int h : g.incident(x)) {
      const int e = edge_of(h);
      if (!forest.test(e)) continue;
      const int y = g.endpoint(opposite(h));
      if (seen[y]) continue;
      seen[y] = true;
      via[y] = h;
      frontier.push(y);
    }
  }
  std::vector<int> path;
  for (int x = v; x != u && via[x] >= 0; x = g.endpoint(via[x])) path.push_back(edge_of(via[x]));
  return path;
}

}  // namespace

Multigraph::Multigraph(int vertex_count, const std::vector<std::pair<int, int>>& edges)
    : vertex_count_(vertex_count), incident_(static_cast<std::size_t>(vertex_count)) {
  if (vertex_count < 0) throw InputError("negative vertex count");
  half_vertex_.reserve(edges.size() * 2);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count) {
      throw InputError("edge " + std::to_string(e) + " has an endpoint outside 0.." +
                       std::to_string(vertex_count - 1));
    }
    half_vertex_.push_back(u);
    half_vertex_.push_back(v);
    incident_[u].push_back(half_edge(static_cast<int>(e), 0));
    incident_[v].push_back(half_edge(static_cast<int>(e), 1));
  }
}

Components connected_components(const Multigraph& g) {
  DisjointSets sets(g.vertex_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.ends(e);
    sets.unite(u, v);
  }
  Components out;
  out.of_vertex.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int root = sets.find(v);
    if (label[root] < 0) label[root] = out.count++;
    out.of_vertex[v] = label[root];
  }
  return out;
}

CycleBasis cycle_basis(const Multigraph& g, const EdgeSubset& required) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  CycleBasis basis;
  basis.forest = g.empty_subset();
  DisjointSets sets(n);

  for (int e : required.indices()) {
    const auto [u, v] = g.ends(e);
    if (!sets.unite(u, v)) {
      std::vector<int> cycle = forest_path(g, basis.forest, u, v);
      cycle.push_back(e);
      std::ostringstream msg;
      msg << "required tree edges contain a cycle:";
      for (int c : cycle) msg << ' ' << c;
      throw StructuralError(msg.str());
    }
    basis.forest.set(e);
  }
  for (int e = 0; e < m; ++e) {
    if (basis.forest.test(e)) continue;
    const auto [u, v] = g.ends(e);
    if (sets.unite(u, v)) {
      basis.forest.set(e);
    } else {
      basis.non_forest_edges.push_back(e);
    }
  }

  // Root every tree and record parent half-edges and depths.
  std::vector<int> parent_half(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  for (int root = 0; root < n; ++root) {
    if (depth[root] >= 0) continue;
    ++basis.components;
    depth[root] = 0;
    std::queue<int> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const int x = frontier.front();
      frontier.pop();
      for (int h : g.incident(x)) {
        if (!basis.forest.test(edge_of(h))) continue;
        const int y = g.endpoint(opposite(h));
        if (depth[y] >= 0) continue;
        depth[y] = depth[x] + 1;
        parent_half[y] = opposite(h);  // half-edge at y pointing to its parent
        frontier.push(y);
      }
    }
  }

  basis.cycles.reserve(basis.non_forest_edges.size());
  for (int e : basis.non_forest_edges) {
    EdgeSubset cycle = g.empty_subset();
    cycle.set(e);
    auto [u, v] = g.ends(e);
    while (u != v) {
      if (depth[u] < depth[v]) std::swap(u, v);
      cycle.flip(edge_of(parent_half[u]));
      u = g.endpoint(opposite(parent_half[u]));
    }
    basis.cycles.push_back(std::move(cycle));
  }
  return basis;
}

CycleBasis cycle_basis(const Multigraph& g) { return cycle_basis(g, g.empty_subset()); }

std::optional<int> first_odd_vertex(const Multigraph& g, const EdgeSubset& subset) {
  std::vector<char> parity(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int e : subset.indices()) {
    const auto [u, v] = g.ends(e);
    parity[u] ^= 1;
    parity[v] ^= 1;
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (parity[v]) return v;
  return std::nullopt;
}

std::uint64_t checked_subset_count(int rank, std::uint64_t cap) {
  if (rank >= 63 || (std::uint64_t{1} << rank) > cap) {
    throw CapacityError("enumeration needs 2^" + std::to_string(rank) + " subsets, cap is " + std::to_string(cap));
  }
  return std::uint64_t{1} << rank;
}

EvenSubsetStream::EvenSubsetStream(const Multigraph& g, std::uint64_t cap) : EvenSubsetStream(cycle_basis(g), cap) {}

EvenSubsetStream::EvenSubsetStream(CycleBasis basis, std::uint64_t cap)
    : basis_(std::move(basis)), current_(basis_.forest.size()), total_(checked_subset_count(basis_.rank(), cap)) {}

std::optional<EdgeSubset> EvenSubsetStream::next() {
  if (emitted_ == total_) return std::nullopt;
  if (emitted_ > 0) current_ ^= basis_.cycles[static_cast<std::size_t>(std::countr_zero(emitted_))];
  ++emitted_;
  return current_;
}

void check_weight_count(int edge_count, Eigen::Index supplied) {
  if (supplied < edge_count) throw InputError("missing weight for edge " + std::to_string(supplied));
  if (supplied > edge_count) throw InputError("weight supplied for unknown edge " + std::to_string(edge_count));
}

void for_each_perfect_matching(const Multigraph& g, const std::function<bool(const std::vector<int>&)>& fn) {
  const int n = g.vertex_count();
  if (n % 2 != 0) return;
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(n / 2));
  bool stop = false;

  std::function<void(int)> extend = [&](int from) {
    int v = from;
    while (v < n && covered[v]) ++v;
    if (v == n) {
      if (!fn(chosen)) stop = true;
      return;
    }
    covered[v] = 1;
    for (int h : g.incident(v)) {
      const int u = g.endpoint(opposite(h));
      if (u == v || covered[u]) continue;
      covered[u] = 1;
      chosen.push_back(edge_of(h));
      extend(v + 1);
      chosen.pop_back();
      covered[u] = 0;
      if (stop) break;
    }
    covered[v] = 0;
  };
  extend(0);
}

std::uint64_t count_perfect_matchings(const Multigraph& g) {
  std::uint64_t count = 0;
  for_each_perfect_matching(g, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace arfpf
