#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "arfpf/fisher.hpp"
#include "arfpf/graph.hpp"
#include "arfpf/scalar.hpp"

namespace arfpf {

// Skew-symmetric adjacency matrix: entry (i, j) accumulates +w_e for every
// edge directed from the vertex at position i to the vertex at position j and
// -w_e for the reverse. Loops contribute nothing.
template <typename Scalar>
MatrixX<Scalar> skew_adjacency(const Multigraph& g, std::span<const int> position, const Orientation& d,
                               const VectorX<Scalar>& w) {
  check_weight_count(g, w.size());
  const Eigen::Index n = g.vertex_count();
  MatrixX<Scalar> a = MatrixX<Scalar>::Zero(n, n);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.is_loop(e)) continue;
    auto [tail, head] = g.ends(e);
    if (d.test(e)) std::swap(tail, head);
    const Eigen::Index i = position[tail];
    const Eigen::Index j = position[head];
    a(i, j) += w[e];
    a(j, i) -= w[e];
  }
  return a;
}

inline std::vector<int> identity_ordering(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

template <typename Scalar>
MatrixX<Scalar> skew_adjacency(const Multigraph& g, const Orientation& d, const VectorX<Scalar>& w) {
  const auto order = identity_ordering(g.vertex_count());
  return skew_adjacency<Scalar>(g, order, d, w);
}

// Pfaffian by skew-symmetric elimination: eliminate rows/columns k, k+1 with
// the pivot a(k, k+1) after exchanging a suitable column into position k+1
// (each exchange flips the sign). Exact scalars take the nearest nonzero
// pivot; floating point takes the largest magnitude in row k. Updates touch
// only indices where rows k or k+1 are nonzero, so sparse inputs with a
// local ordering stay cheap.
template <typename Derived>
typename Derived::Scalar pfaffian(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> a = input;
  const Eigen::Index n = a.rows();
  if (n % 2 != 0) return Scalar(0);

  Scalar result(1);
  std::vector<Eigen::Index> active;
  std::vector<Scalar> row0, row1, scaled0, scaled1;
  for (Eigen::Index k = 0; k < n; k += 2) {
    Eigen::Index pivot_col = -1;
    if constexpr (is_exact_v<Scalar>) {
      for (Eigen::Index j = k + 1; j < n && pivot_col < 0; ++j)
        if (a(k, j) != 0) pivot_col = j;
    } else {
      Scalar best(0);
      for (Eigen::Index j = k + 1; j < n; ++j) {
        const Scalar mag = std::abs(a(k, j));
        if (mag > best) {
          best = mag;
          pivot_col = j;
        }
      }
    }
    if (pivot_col < 0) return Scalar(0);
    if (pivot_col != k + 1) {
      a.row(k + 1).swap(a.row(pivot_col));
      a.col(k + 1).swap(a.col(pivot_col));
      result = -result;
    }
    const Scalar pivot = a(k, k + 1);
    result *= pivot;

    active.clear();
    row0.clear();
    row1.clear();
    for (Eigen::Index i = k + 2; i < n; ++i) {
      if (a(k, i) != 0 || a(k + 1, i) != 0) {
        active.push_back(i);
        row0.push_back(a(k, i));
        row1.push_back(a(k + 1, i));
      }
    }
    const std::size_t count = active.size();
    scaled0.resize(count);
    scaled1.resize(count);
    for (std::size_t s = 0; s < count; ++s) {
      scaled0[s] = row0[s] / pivot;
      scaled1[s] = row1[s] / pivot;
    }
    // a(i, j) += a(k+1, i) a(k, j) / p - a(k, i) a(k+1, j) / p
    if constexpr (is_exact_v<Scalar>) {
      for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t t = s + 1; t < count; ++t) {
          Scalar& entry = a(active[s], active[t]);
          entry += row1[s] * scaled0[t] - row0[s] * scaled1[t];
          a(active[t], active[s]) = -entry;
        }
      }
    } else {
      for (std::size_t t = 0; t < count; ++t) {
        auto column = a.col(active[t]);
        const Scalar u = scaled0[t];
        const Scalar v = scaled1[t];
        for (std::size_t s = 0; s < count; ++s) column[active[s]] += row1[s] * u - row0[s] * v;
      }
    }
  }
  return result;
}

// Host weights on the images of host edges, 1 on gadget edges.
template <typename Scalar>
VectorX<Scalar> blown_up_weights(const FisherBlowup& blowup, const VectorX<Scalar>& host_weights) {
  check_weight_count(blowup.host, host_weights.size());
  VectorX<Scalar> w = VectorX<Scalar>::Constant(blowup.graph.edge_count(), Scalar(1));
  w.head(blowup.host_edge_count()) = host_weights;
  return w;
}

// Pfaffian of the blown-up adjacency matrix with gadget weights set to one,
// vertices in blow-up order.
template <typename Scalar>
Scalar projected_pfaffian(const FisherBlowup& blowup, const Orientation& d, const VectorX<Scalar>& host_weights) {
  return pfaffian(skew_adjacency<Scalar>(blowup.graph, d, blown_up_weights(blowup, host_weights)));
}

}  // namespace arfpf
