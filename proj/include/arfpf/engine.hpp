#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "arfpf/fisher.hpp"
#include "arfpf/graph.hpp"
#include "arfpf/pfaffian.hpp"
#include "arfpf/scalar.hpp"
#include "arfpf/signfit.hpp"
#include "arfpf/surface.hpp"

namespace arfpf {

// A connected component with local vertex and edge ids.
struct Component {
  Multigraph graph;
  RotationSystem rotation;
  std::vector<int> vertices;  // local -> global
  std::vector<int> edges;     // local -> global
};

std::vector<Component> split_components(const Multigraph& g, const RotationSystem& rot);

template <typename Scalar>
VectorX<Scalar> restrict_weights(const VectorX<Scalar>& w, const std::vector<int>& edges) {
  VectorX<Scalar> out(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) out[static_cast<Eigen::Index>(i)] = w[edges[i]];
  return out;
}

struct PhaseTime {
  std::string phase;
  double milliseconds = 0;
};

class PhaseClock {
 public:
  void mark(std::string phase) {
    const auto now = std::chrono::steady_clock::now();
    times_.push_back({std::move(phase), std::chrono::duration<double, std::milli>(now - last_).count()});
    last_ = now;
  }
  const std::vector<PhaseTime>& times() const { return times_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::vector<PhaseTime> times_;
};

struct PreparedComponent {
  Component component;
  FisherBlowup blowup;        // unused for matchings
  HomologyData homology;
  PfaffianFamily family;
  bool blown_up = false;
};

// Everything that does not depend on the weights: blow-ups, homology and the
// fitted families, one per component.
struct PreparedFamily {
  int edge_count = 0;
  std::vector<PreparedComponent> components;
  int genus = 0;
  int epsilon0 = 1;
  FitMode mode = FitMode::quadratic;
  bool vanishes = false;      // matchings only: some component has none
  std::vector<PhaseTime> timing;

  std::uint64_t family_size() const { return std::uint64_t{1} << (2 * genus); }
  std::size_t pfaffian_count() const;
};

PreparedComponent prepare_even_component(Component component, FitMode mode, std::uint64_t cap);
PreparedFamily prepare_even_poly(const Multigraph& g, const RotationSystem& rot, FitMode mode = FitMode::quadratic,
                                 std::uint64_t cap = kDefaultEnumerationCap);
PreparedFamily prepare_matching_poly(const Multigraph& g, const RotationSystem& rot,
                                     std::uint64_t cap = kDefaultEnumerationCap);

template <typename Scalar>
struct EvaluationReport {
  Scalar value{};
  int genus = 0;
  std::uint64_t family_size = 1;
  std::size_t pfaffians = 0;
  int epsilon0 = 1;
  FitMode mode = FitMode::quadratic;
  std::vector<PhaseTime> timing;
};

template <typename Scalar>
Scalar component_pfaffian(const PreparedComponent& pc, const Orientation& d, const VectorX<Scalar>& w) {
  if (pc.blown_up) return projected_pfaffian<Scalar>(pc.blowup, d, w);
  return pfaffian(skew_adjacency<Scalar>(pc.component.graph, d, w));
}

// sum_q alpha_q Pf(D_q) for one component. Pfaffians may run on `jobs`
// threads; the sum is always taken in family order.
template <typename Scalar>
Scalar evaluate_component(const PreparedComponent& pc, const VectorX<Scalar>& w, int jobs = 1) {
  const auto& members = pc.family.members;
  std::vector<Scalar> values(members.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < members.size(); i += stride)
      values[i] = component_pfaffian<Scalar>(pc, members[i].orientation, w);
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), members.size());
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  Scalar total(0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if constexpr (is_exact_v<Scalar>) {
      total += members[i].alpha * values[i];
    } else {
      total += members[i].alpha.template convert_to<Scalar>() * values[i];
    }
  }
  return total;
}

template <typename Scalar>
Scalar evaluate(const PreparedFamily& prepared, const VectorX<Scalar>& w, int jobs = 1) {
  check_weight_count(prepared.edge_count, w.size());
  if (prepared.vanishes) return Scalar(0);
  Scalar value(1);
  for (const auto& pc : prepared.components)
    value *= evaluate_component<Scalar>(pc, restrict_weights(w, pc.component.edges), jobs);
  return value;
}

template <typename Scalar>
EvaluationReport<Scalar> report_for(const PreparedFamily& prepared, const VectorX<Scalar>& w, int jobs) {
  EvaluationReport<Scalar> report;
  const auto start = std::chrono::steady_clock::now();
  report.value = evaluate<Scalar>(prepared, w, jobs);
  report.genus = prepared.genus;
  report.family_size = prepared.family_size();
  report.pfaffians = prepared.pfaffian_count();
  report.epsilon0 = prepared.epsilon0;
  report.mode = prepared.mode;
  report.timing = prepared.timing;
  report.timing.push_back(
      {"pfaffians", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()});
  return report;
}

// E_G(w) as a signed sum of projected Pfaffians.
template <typename Scalar>
EvaluationReport<Scalar> even_poly(const Multigraph& g, const RotationSystem& rot, const VectorX<Scalar>& w,
                                   FitMode mode = FitMode::quadratic, int jobs = 1) {
  check_weight_count(g, w.size());
  return report_for<Scalar>(prepare_even_poly(g, rot, mode), w, jobs);
}

// P_G(w) as a signed sum of Pfaffians of G itself.
template <typename Scalar>
EvaluationReport<Scalar> matching_poly(const Multigraph& g, const RotationSystem& rot, const VectorX<Scalar>& w,
                                       std::uint64_t cap = kDefaultEnumerationCap, int jobs = 1) {
  check_weight_count(g, w.size());
  return report_for<Scalar>(prepare_matching_poly(g, rot, cap), w, jobs);
}

// Z_G(x) through the substitution z = (x - 1/x) / (x + 1/x).
Rational ising_partition(const Multigraph& g, const RotationSystem& rot, const VectorX<Rational>& x);

inline constexpr int kSpinSumLimit = 24;

// Direct sum over all 2^|V| spin assignments.
Rational spin_sum_oracle(const Multigraph& g, const VectorX<Rational>& x);

struct Monomial {
  EdgeSubset edges;
  Rational coefficient;
};

inline constexpr int kSymbolicEdgeLimit = 16;

// Multilinear coefficients of E_G recovered from its values on {0,1}^m.
std::vector<Monomial> symbolic_even_poly(const Multigraph& g, const RotationSystem& rot);

struct VerifyOptions {
  int trials = 20;
  std::uint64_t seed = 1;
  bool check_matching = true;
  bool check_ising = true;
  bool corrupt_alpha = false;  // test hook: negate the first coefficient
  FitMode mode = FitMode::quadratic;
  std::uint64_t cap = kDefaultEnumerationCap;
};

struct VerifyFailure {
  int trial = 0;
  std::string check;
  std::vector<std::string> weights;
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  int trials = 0;
  int passed = 0;
  bool checked_matching = false;
  bool checked_ising = false;
  std::vector<VerifyFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Weight vectors with numerator and denominator in [1, 97].
std::vector<VectorX<Rational>> random_weights(int edge_count, int count, std::uint64_t seed);

VerifyReport verify(const Multigraph& g, const RotationSystem& rot, const VerifyOptions& options);

struct OptimalityReport {
  int genus = 0;
  std::uint64_t family_size = 1;
  std::uint64_t rank = 0;
  std::uint64_t lower_bound = 1;
  bool orthogonal = true;
  bool signs_match = true;   // predicted signs equal actual matching signs
};

// For each class x an even set realizing it, the matrix of predicted signs
// against the family, and its exact rank.
OptimalityReport optimality_certificate(const Multigraph& g, const RotationSystem& rot);

}  // namespace arfpf
