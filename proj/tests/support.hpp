#pragma once

#include <string>
#include <vector>

#include "arfpf/io.hpp"

namespace arfpf::testing {

inline EmbeddedGraph fixture(const std::string& name) {
  return read_graph_file(std::string(ARFPF_FIXTURE_DIR) + "/" + name + ".graph");
}

inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> names{"loop",    "theta_planar", "theta_torus", "k4",       "k5",
                                              "k33",     "petersen",     "grid2x2",     "grid3x3",  "grid4x4",
                                              "torus3x3", "torus4x4"};
  return names;
}

inline Multigraph triangle() { return Multigraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

inline Multigraph theta() { return Multigraph(2, {{0, 1}, {0, 1}, {0, 1}}); }

// Independent even-subset count: degree parity over all 2^m subsets.
inline std::vector<EdgeSubset> even_subsets_by_parity(const Multigraph& g) {
  const int m = g.edge_count();
  std::vector<EdgeSubset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count()), 0);
    EdgeSubset s(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
      if (!(mask >> e & 1U)) continue;
      s.set(static_cast<std::size_t>(e));
      const auto [u, v] = g.ends(e);
      ++degree[u];
      ++degree[v];
    }
    bool even = true;
    for (int d : degree) even = even && d % 2 == 0;
    if (even) out.push_back(std::move(s));
  }
  return out;
}

// Independent matching enumeration: all subsets of n/2 non-loop edges that
// cover every vertex.
template <typename Scalar>
Scalar matching_sum_by_subsets(const Multigraph& g, const VectorX<Scalar>& w) {
  const int m = g.edge_count();
  const int n = g.vertex_count();
  Scalar total(0);
  if (n % 2 != 0) return total;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (std::popcount(mask) != n / 2) continue;
    std::vector<int> cover(static_cast<std::size_t>(n), 0);
    Scalar term(1);
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1U)) continue;
      if (g.is_loop(e)) ok = false;
      const auto [u, v] = g.ends(e);
      ok = ok && ++cover[u] == 1 && ++cover[v] == 1;
      term *= w[e];
    }
    if (ok) total += term;
  }
  return total;
}

}  // namespace arfpf::testing
