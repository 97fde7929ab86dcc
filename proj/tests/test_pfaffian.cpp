#include <chrono>
#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "arfpf/pfaffian.hpp"
#include "arfpf/signfit.hpp"
#include "support.hpp"

using namespace arfpf;
using arfpf::testing::fixture;

namespace {

// Expansion along the first row: Pf(A) = sum_j (-1)^(j+1) a(0,j) Pf(A minus rows/cols 0, j).
Rational expansion(const MatrixX<Rational>& a, std::vector<int> rows) {
  if (rows.empty()) return 1;
  Rational total = 0;
  const int first = rows[0];
  for (std::size_t j = 1; j < rows.size(); ++j) {
    if (a(first, rows[j]) == 0) continue;
    std::vector<int> rest;
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (k != j) rest.push_back(rows[k]);
    const Rational term = a(first, rows[j]) * expansion(a, rest);
    total += (j % 2 == 1) ? term : Rational(-term);
  }
  return total;
}

MatrixX<Rational> random_skew(int n, std::mt19937_64& rng, int zero_percent = 0) {
  MatrixX<Rational> a = MatrixX<Rational>::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (static_cast<int>(rng() % 100) < zero_percent) continue;
      a(i, j) = Rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7 + 1));
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

}  // namespace

TEST(SkewAdjacency, SingleEdge) {
  const Multigraph g(2, {{0, 1}});
  VectorX<Rational> w(1);
  w << 5;
  const auto a = skew_adjacency<Rational>(g, Orientation(1), w);
  EXPECT_EQ(a(0, 1), 5);
  EXPECT_EQ(a(1, 0), -5);
}

TEST(SkewAdjacency, ParallelEdgesAccumulateAndLoopsVanish) {
  const Multigraph g(2, {{0, 1}, {1, 0}, {0, 0}});
  VectorX<Rational> w(3);
  w << 3, 7, 11;
  const auto a = skew_adjacency<Rational>(g, Orientation(3), w);
  EXPECT_EQ(a(0, 1), -4);
  EXPECT_EQ(a(0, 0), 0);
}

TEST(SkewAdjacency, MissingWeightIsNamed) {
  EXPECT_THROW(skew_adjacency<Rational>(Multigraph(2, {{0, 1}, {0, 1}}), Orientation(2), VectorX<Rational>(1)),
               InputError);
}

TEST(Pfaffian, SmallCases) {
  EXPECT_EQ(pfaffian(MatrixX<Rational>(0, 0)), 1);
  MatrixX<Rational> two(2, 2);
  two << 0, Rational(3, 4), Rational(-3, 4), 0;
  EXPECT_EQ(pfaffian(two), Rational(3, 4));
  EXPECT_EQ(pfaffian(MatrixX<Rational>::Zero(3, 3)), 0);

  // a f - b e + c d
  const Rational a = 2, b = 3, c = 5, d = 7, e = 11, f = 13;
  MatrixX<Rational> four(4, 4);
  four << 0, a, b, c, -a, 0, d, e, -b, -d, 0, f, -c, -e, -f, 0;
  EXPECT_EQ(pfaffian(four), a * f - b * e + c * d);
  EXPECT_DOUBLE_EQ(pfaffian(four.cast<double>().eval()), (a * f - b * e + c * d).convert_to<double>());
}

TEST(Pfaffian, StructurallySingularIsZero) {
  MatrixX<Rational> a = MatrixX<Rational>::Zero(4, 4);
  a(0, 1) = 1;
  a(1, 0) = -1;
  EXPECT_EQ(pfaffian(a), 0);
}

TEST(Pfaffian, MatchesFirstRowExpansion) {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 10; n += 2) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_skew(n, rng, trial * 15);
      std::vector<int> rows(static_cast<std::size_t>(n));
      std::iota(rows.begin(), rows.end(), 0);
      EXPECT_EQ(pfaffian(a), expansion(a, rows)) << "n=" << n;
    }
  }
}

TEST(Pfaffian, SquareIsDeterminant) {
  std::mt19937_64 rng(22);
  for (int n = 2; n <= 12; n += 2) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto a = random_skew(n, rng, trial * 20);
      const Rational pf = pfaffian(a);
      EXPECT_EQ(pf * pf, a.partialPivLu().determinant()) << "n=" << n;
    }
  }
}

TEST(Pfaffian, DirectSumMultiplies) {
  std::mt19937_64 rng(23);
  const auto a = random_skew(4, rng);
  const auto b = random_skew(6, rng);
  MatrixX<Rational> sum = MatrixX<Rational>::Zero(10, 10);
  sum.topLeftCorner(4, 4) = a;
  sum.bottomRightCorner(6, 6) = b;
  EXPECT_EQ(pfaffian(sum), pfaffian(a) * pfaffian(b));
}

TEST(Pfaffian, SwappingRowsAndColumnsFlipsSign) {
  std::mt19937_64 rng(24);
  auto a = random_skew(8, rng);
  const Rational before = pfaffian(a);
  a.row(2).swap(a.row(5));
  a.col(2).swap(a.col(5));
  EXPECT_EQ(pfaffian(a), -before);
}

TEST(Pfaffian, FloatAgreesWithExact) {
  std::mt19937_64 rng(25);
  for (int n : {6, 20, 60, 120, 200}) {
    // Diagonally dominant-ish: a strong pairing block plus small noise.
    MatrixX<Rational> a = MatrixX<Rational>::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const bool paired = j == i + 1 && i % 2 == 0;
        const bool noisy = rng() % 100 < 8;
        if (!paired && !noisy) continue;
        a(i, j) = paired ? Rational(static_cast<long>(rng() % 5 + 8)) : Rational(static_cast<long>(rng() % 7) - 3, 4);
        a(j, i) = -a(i, j);
      }
    }
    const double exact = pfaffian(a).convert_to<double>();
    const double approx = pfaffian(a.cast<double>().eval());
    EXPECT_NEAR(approx / exact, 1.0, 1e-9) << "n=" << n;
  }
}

TEST(ProjectedPfaffian, PlanarK4CountsEvenSubsets) {
  const auto eg = fixture("k4");
  const auto b = blow_up(eg.graph, derive_sigma(eg.rotation));
  const auto hd = homology_data(b.graph, blowup_rotation(eg.graph, eg.rotation, b), b.gadget_path_edges());
  const auto fit = fit_base(b, hd, FitMode::quadratic);
  const auto value = projected_pfaffian<Rational>(b, fit.base, VectorX<Rational>::Constant(6, 1));
  EXPECT_EQ(value * fit.epsilon0, 8);
}

TEST(ProjectedPfaffian, ZeroHostWeightsLeaveOnlyTheInternalMatching) {
  for (const auto& name : arfpf::testing::all_fixtures()) {
    const auto eg = fixture(name);
    const auto b = blow_up(eg.graph, derive_sigma(eg.rotation));
    const auto value = projected_pfaffian<Rational>(b, b.gadget_orientation, VectorX<Rational>::Zero(eg.graph.edge_count()));
    EXPECT_TRUE(value == 1 || value == -1) << name;
  }
}
