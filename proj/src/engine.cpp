#include "arfpf/engine.hpp"

#include <algorithm>
#include <map>
#include <random>

#include <Eigen/LU>

namespace arfpf {

std::vector<Component> split_components(const Multigraph& g, const RotationSystem& rot) {
  rot.validate(g);
  const Components comps = connected_components(g);
  std::vector<Component> out(static_cast<std::size_t>(comps.count));
  std::vector<int> local_vertex(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto& c = out[static_cast<std::size_t>(comps.of_vertex[v])];
    local_vertex[v] = static_cast<int>(c.vertices.size());
    c.vertices.push_back(v);
  }
  std::vector<int> local_edge(static_cast<std::size_t>(g.edge_count()));
  std::vector<std::vector<std::pair<int, int>>> ends(out.size());
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.ends(e);
    const auto ci = static_cast<std::size_t>(comps.of_vertex[u]);
    local_edge[e] = static_cast<int>(out[ci].edges.size());
    out[ci].edges.push_back(e);
    ends[ci].emplace_back(local_vertex[u], local_vertex[v]);
  }
  for (std::size_t ci = 0; ci < out.size(); ++ci) {
    auto& c = out[ci];
    c.graph = Multigraph(static_cast<int>(c.vertices.size()), ends[ci]);
    std::vector<std::vector<int>> orders;
    for (int v : c.vertices) {
      std::vector<int> order;
      for (int h : rot.at(v)) order.push_back(half_edge(local_edge[edge_of(h)], side_of(h)));
      orders.push_back(std::move(order));
    }
    c.rotation = RotationSystem(std::move(orders));
  }
  return out;
}

std::size_t PreparedFamily::pfaffian_count() const {
  if (vanishes) return 0;
  std::size_t count = 0;
  for (const auto& pc : components) count += pc.family.members.size();
  return count;
}

namespace {

void merge_timing(std::vector<PhaseTime>& into, const std::vector<PhaseTime>& times) {
  for (const auto& t : times) {
    auto it = std::find_if(into.begin(), into.end(), [&](const PhaseTime& p) { return p.phase == t.phase; });
    if (it == into.end()) {
      into.push_back(t);
    } else {
      it->milliseconds += t.milliseconds;
    }
  }
}

BaseFit trivial_fit(int edge_count) {
  BaseFit fit;
  fit.base = Orientation(static_cast<std::size_t>(edge_count));
  fit.base_form.values = BitVec(0);
  return fit;
}

PreparedComponent prepare_even_component(Component component, FitMode mode, std::uint64_t cap, PhaseClock& clock) {
  PreparedComponent pc;
  pc.blown_up = true;
  pc.blowup = blow_up(component.graph, derive_sigma(component.rotation));
  const int m = component.graph.edge_count();
  BaseFit fit = trivial_fit(pc.blowup.graph.edge_count());
  fit.base = pc.blowup.gadget_orientation;
  fit.mode = mode;
  if (m > 0) {
    const RotationSystem rotation = blowup_rotation(component.graph, component.rotation, pc.blowup);
    clock.mark("blowup");
    pc.homology = homology_data(pc.blowup.graph, rotation, pc.blowup.gadget_path_edges());
    clock.mark("homology");
    fit = fit_base(pc.blowup, pc.homology, mode, cap);
    clock.mark("fit");
  }
  pc.family = build_family(fit, pc.homology, m);
  clock.mark("family");
  pc.component = std::move(component);
  return pc;
}

}  // namespace

PreparedComponent prepare_even_component(Component component, FitMode mode, std::uint64_t cap) {
  PhaseClock clock;
  return prepare_even_component(std::move(component), mode, cap, clock);
}

PreparedFamily prepare_even_poly(const Multigraph& g, const RotationSystem& rot, FitMode mode, std::uint64_t cap) {
  PreparedFamily prepared;
  prepared.edge_count = g.edge_count();
  prepared.mode = mode;
  PhaseClock clock;
  auto components = split_components(g, rot);
  clock.mark("split");
  for (auto& c : components) {
    prepared.components.push_back(prepare_even_component(std::move(c), mode, cap, clock));
    const auto& pc = prepared.components.back();
    prepared.genus += pc.family.genus;
    prepared.epsilon0 *= pc.family.epsilon0;
  }
  merge_timing(prepared.timing, clock.times());
  return prepared;
}

PreparedFamily prepare_matching_poly(const Multigraph& g, const RotationSystem& rot, std::uint64_t cap) {
  PreparedFamily prepared;
  prepared.edge_count = g.edge_count();
  prepared.mode = FitMode::exhaustive;
  PhaseClock clock;
  auto components = split_components(g, rot);
  clock.mark("split");
  for (auto& c : components) {
    PreparedComponent pc;
    const int m = c.graph.edge_count();
    BaseFit fit = trivial_fit(m);
    if (m > 0) {
      pc.homology = homology_data(c.graph, c.rotation);
      clock.mark("homology");
    }
    prepared.genus += pc.homology.genus;
    if (c.graph.vertex_count() % 2 != 0) {
      prepared.vanishes = true;
    } else if (m > 0) {
      SignSystem system(m, pc.homology.genus);
      const auto order = identity_ordering(c.graph.vertex_count());
      std::uint64_t count = 0;
      for_each_perfect_matching(c.graph, [&](const std::vector<int>& matching) {
        if (++count > cap)
          throw CapacityError("perfect matching enumeration exceeds cap " + std::to_string(cap));
        system.add(matching, pc.homology.class_of_edges(matching),
                   matching_sign(order, c.graph, fit.base, matching) < 0);
        return true;
      });
      if (count == 0) prepared.vanishes = true;
      else fit = system.solve(fit.base, FitMode::exhaustive);
      clock.mark("fit");
    }
    if (prepared.vanishes) {
      pc.family.genus = pc.homology.genus;
    } else {
      pc.family = build_family(fit, pc.homology, m);
    }
    prepared.epsilon0 *= pc.family.epsilon0;
    pc.component = std::move(c);
    prepared.components.push_back(std::move(pc));
  }
  merge_timing(prepared.timing, clock.times());
  return prepared;
}

namespace {

void check_nonzero(const VectorX<Rational>& x) {
  for (Eigen::Index e = 0; e < x.size(); ++e)
    if (x[e] == 0) throw InputError("coupling for edge " + std::to_string(e) + " is zero");
}

Rational ising_from_prepared(const PreparedFamily& prepared, int vertex_count, const VectorX<Rational>& x) {
  check_weight_count(prepared.edge_count, x.size());
  check_nonzero(x);
  VectorX<Rational> z(x.size());
  Rational factor = Rational(Integer(1) << vertex_count);
  for (Eigen::Index e = 0; e < x.size(); ++e) {
    const Rational inv = 1 / x[e];
    z[e] = (x[e] - inv) / (x[e] + inv);
    factor *= (x[e] + inv) / 2;
  }
  return factor * evaluate<Rational>(prepared, z);
}

}  // namespace

Rational ising_partition(const Multigraph& g, const RotationSystem& rot, const VectorX<Rational>& x) {
  check_weight_count(g, x.size());
  check_nonzero(x);
  return ising_from_prepared(prepare_even_poly(g, rot), g.vertex_count(), x);
}

Rational spin_sum_oracle(const Multigraph& g, const VectorX<Rational>& x) {
  check_weight_count(g, x.size());
  check_nonzero(x);
  const int n = g.vertex_count();
  if (n > kSpinSumLimit)
    throw CapacityError("spin sum needs 2^" + std::to_string(n) + " states, limit is 2^" + std::to_string(kSpinSumLimit));
  std::vector<Rational> inverse(static_cast<std::size_t>(x.size()));
  for (Eigen::Index e = 0; e < x.size(); ++e) inverse[static_cast<std::size_t>(e)] = 1 / x[e];
  Rational total(0);
  for (std::uint64_t spins = 0; spins < (std::uint64_t{1} << n); ++spins) {
    Rational term(1);
    for (int e = 0; e < g.edge_count(); ++e) {
      const auto [u, v] = g.ends(e);
      const bool agree = ((spins >> u) & 1U) == ((spins >> v) & 1U);
      term *= agree ? x[e] : inverse[static_cast<std::size_t>(e)];
    }
    total += term;
  }
  return total;
}

std::vector<Monomial> symbolic_even_poly(const Multigraph& g, const RotationSystem& rot) {
  const int m = g.edge_count();
  if (m > kSymbolicEdgeLimit)
    throw CapacityError("symbolic expansion needs at most " + std::to_string(kSymbolicEdgeLimit) + " edges, got " +
                        std::to_string(m));
  const PreparedFamily prepared = prepare_even_poly(g, rot);
  const std::uint64_t size = std::uint64_t{1} << m;
  std::vector<Rational> coeff(size);
  VectorX<Rational> w(m);
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    for (int e = 0; e < m; ++e) w[e] = (mask >> e) & 1U;
    coeff[mask] = evaluate<Rational>(prepared, w);
  }
  for (int e = 0; e < m; ++e)
    for (std::uint64_t mask = 0; mask < size; ++mask)
      if (mask >> e & 1U) coeff[mask] -= coeff[mask ^ (std::uint64_t{1} << e)];

  std::vector<Monomial> out;
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    EdgeSubset subset(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1U) subset.set(static_cast<std::size_t>(e));
    const bool even = is_even(g, subset);
    if (coeff[mask] != (even ? 1 : 0))
      throw InvariantViolation("coefficient of {" + subset.to_string() + "} is " + format_rational(coeff[mask]) +
                               (even ? ", expected 1" : ", expected 0"));
    if (even) out.push_back({std::move(subset), coeff[mask]});
  }
  return out;
}

std::vector<VectorX<Rational>> random_weights(int edge_count, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<VectorX<Rational>> out;
  for (int t = 0; t < count; ++t) {
    VectorX<Rational> w(edge_count);
    for (int e = 0; e < edge_count; ++e) {
      const auto p = static_cast<long>(rng() % 97 + 1);
      const auto q = static_cast<long>(rng() % 97 + 1);
      w[e] = Rational(p) / q;
    }
    out.push_back(std::move(w));
  }
  return out;
}

VerifyReport verify(const Multigraph& g, const RotationSystem& rot, const VerifyOptions& options) {
  VerifyReport report;
  report.trials = options.trials;
  if (options.trials <= 0) return report;

  PreparedFamily even = prepare_even_poly(g, rot, options.mode, options.cap);
  if (options.corrupt_alpha) {
    for (auto& pc : even.components) {
      if (!pc.family.members.empty()) {
        pc.family.members.front().alpha = -pc.family.members.front().alpha;
        break;
      }
    }
  }
  std::optional<PreparedFamily> matching;
  if (options.check_matching) {
    try {
      matching = prepare_matching_poly(g, rot, options.cap);
    } catch (const CapacityError&) {
    }
  }
  report.checked_matching = matching.has_value();
  report.checked_ising = options.check_ising && g.vertex_count() <= 16;

  const auto samples = random_weights(g.edge_count(), options.trials, options.seed);
  for (int t = 0; t < options.trials; ++t) {
    const auto& w = samples[static_cast<std::size_t>(t)];
    const std::size_t before = report.failures.size();
    auto record = [&](const char* check, const Rational& expected, const Rational& actual) {
      if (expected == actual) return;
      VerifyFailure f;
      f.trial = t;
      f.check = check;
      for (Eigen::Index e = 0; e < w.size(); ++e) f.weights.push_back(format_rational(w[e]));
      f.expected = format_rational(expected);
      f.actual = format_rational(actual);
      report.failures.push_back(std::move(f));
    };
    record("even_poly", even_poly_oracle<Rational>(g, w, options.cap), evaluate<Rational>(even, w));
    if (matching) record("matching_poly", matching_oracle<Rational>(g, w), evaluate<Rational>(*matching, w));
    if (report.checked_ising)
      record("ising_partition", spin_sum_oracle(g, w), ising_from_prepared(even, g.vertex_count(), w));
    if (report.failures.size() == before) ++report.passed;
  }
  return report;
}

namespace {

struct ClassRow {
  BitVec cls;
  EdgeSubset subset;
  std::size_t pivot;
};

// Even sets realizing every class, indexed by the class's bit pattern.
std::vector<EdgeSubset> class_representatives(const PreparedComponent& pc) {
  const Multigraph& host = pc.component.graph;
  const auto& hd = pc.homology;
  const std::size_t dim = static_cast<std::size_t>(hd.dimension());
  std::vector<ClassRow> rows;
  for (const EdgeSubset& cycle : cycle_basis(host).cycles) {
    BitVec cls = hd.class_of_edges(cycle.indices());
    EdgeSubset subset = cycle;
    for (const auto& r : rows) {
      if (cls.test(r.pivot)) {
        cls ^= r.cls;
        subset ^= r.subset;
      }
    }
    if (cls.any()) {
      const std::size_t pivot = cls.find_first();
      rows.push_back({std::move(cls), std::move(subset), pivot});
    }
  }
  if (rows.size() != dim)
    throw InvariantViolation("cycle space maps onto a subspace of rank " + std::to_string(rows.size()) + " < " +
                             std::to_string(dim));
  std::vector<EdgeSubset> reps;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << dim); ++t) {
    BitVec x(dim);
    for (std::size_t i = 0; i < dim; ++i)
      if (t >> i & 1U) x.set(i);
    BitVec rest = x;
    EdgeSubset subset = host.empty_subset();
    for (const auto& r : rows) {
      if (rest.test(r.pivot)) {
        rest ^= r.cls;
        subset ^= r.subset;
      }
    }
    if (rest.any() || hd.class_of_edges(subset.indices()) != x)
      throw InvariantViolation("failed to realize class " + x.to_string());
    reps.push_back(std::move(subset));
  }
  return reps;
}

}  // namespace

OptimalityReport optimality_certificate(const Multigraph& g, const RotationSystem& rot) {
  const PreparedFamily prepared = prepare_even_poly(g, rot);
  OptimalityReport report;
  report.genus = prepared.genus;
  report.family_size = prepared.family_size();
  report.rank = 1;
  for (const auto& pc : prepared.components) {
    const auto& family = pc.family;
    const std::size_t size = family.members.size();
    std::vector<EdgeSubset> reps;
    if (pc.component.graph.edge_count() > 0) {
      reps = class_representatives(pc);
    } else {
      reps.push_back(pc.component.graph.empty_subset());
    }
    const auto order = identity_ordering(pc.blowup.graph.vertex_count());
    Eigen::MatrixXi signs(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t x = 0; x < reps.size(); ++x) {
      const BitVec cls = pc.component.graph.edge_count() > 0 ? pc.homology.class_of_edges(reps[x].indices()) : BitVec(0);
      const auto matching = extend_even_to_matching(pc.blowup, reps[x]);
      for (std::size_t q = 0; q < size; ++q) {
        const int predicted = family.predicted_sign(family.members[q], cls);
        const int actual = matching_sign(order, pc.blowup.graph, family.members[q].orientation, matching);
        if (predicted != actual) report.signs_match = false;
        signs(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(x)) = predicted;
      }
    }
    const Eigen::MatrixXi gram = signs.transpose() * signs;
    if (gram != static_cast<int>(size) * Eigen::MatrixXi::Identity(gram.rows(), gram.cols())) report.orthogonal = false;
    const MatrixX<Rational> exact = signs.cast<Rational>();
    report.rank *= static_cast<std::uint64_t>(exact.fullPivLu().rank());
  }
  if (!report.signs_match) throw InvariantViolation("predicted signs disagree with matching signs");
  if (!report.orthogonal) throw InvariantViolation("sign matrix is not 2^g times an orthogonal matrix");
  if (report.rank != report.family_size)
    throw InvariantViolation("sign matrix rank " + std::to_string(report.rank) + " is below " +
                             std::to_string(report.family_size));
  report.lower_bound = report.rank;
  return report;
}

}  // namespace arfpf
