#include "arfpf/signfit.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Dense>

namespace arfpf {

namespace {

BitVec bits_of(std::uint64_t pattern, std::size_t size) {
  BitVec v(size);
  for (std::size_t i = 0; i < size; ++i)
    if (pattern >> i & 1U) v.set(i);
  return v;
}

}  // namespace

bool QuadraticForm::operator()(const BitVec& x) const {
  bool value = dot(values, x);
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) value ^= x.test(i) && x.test(i + 1);
  return value;
}

std::vector<QuadraticForm> all_quadratic_forms(int genus) {
  const std::size_t dim = static_cast<std::size_t>(2 * genus);
  std::vector<QuadraticForm> forms;
  forms.reserve(std::size_t{1} << dim);
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << dim); ++t) forms.push_back({bits_of(t, dim)});
  return forms;
}

bool arf(const QuadraticForm& q) {
  bool value = false;
  for (std::size_t i = 0; i + 1 < q.values.size(); i += 2) value ^= q.values.test(i) && q.values.test(i + 1);
  return value;
}

bool arf_by_counting(const QuadraticForm& q) {
  const std::size_t dim = q.values.size();
  std::int64_t sum = 0;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << dim); ++t) sum += q(bits_of(t, dim)) ? -1 : 1;
  if (std::llabs(sum) != (std::int64_t{1} << q.genus())) throw InvariantViolation("form is not a quadratic refinement");
  return sum < 0;
}

int matching_sign(std::span<const int> position, const Multigraph& g, const Orientation& d,
                  std::span<const int> matching) {
  const std::size_t n = static_cast<std::size_t>(g.vertex_count());
  if (matching.size() * 2 != n) throw StructuralError("matching does not cover every vertex");
  std::vector<int> partner(n, -1);
  int sign = 1;
  for (int e : matching) {
    if (g.is_loop(e)) throw StructuralError("a perfect matching cannot use loop " + std::to_string(e));
    auto [tail, head] = g.ends(e);
    if (d.test(e)) std::swap(tail, head);
    const int i = position[tail];
    const int j = position[head];
    if (partner[i] >= 0 || partner[j] >= 0) throw StructuralError("matching covers a vertex twice");
    partner[i] = j;
    partner[j] = i;
    if (i > j) sign = -sign;
  }
  // perm = (lo_1, hi_1, lo_2, hi_2, ...) with pairs by increasing low end.
  std::vector<int> perm;
  perm.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (partner[i] > static_cast<int>(i)) {
      perm.push_back(static_cast<int>(i));
      perm.push_back(partner[i]);
    }
  }
  std::vector<char> seen(n, 0);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = 1;
  }
  return (n - cycles) % 2 == 0 ? sign : -sign;
}

std::string to_string(FitMode mode) { return mode == FitMode::quadratic ? "quadratic" : "exhaustive"; }

FitMode parse_fit_mode(const std::string& text) {
  if (text == "quadratic" || text == "quadratic-certified") return FitMode::quadratic;
  if (text == "exhaustive") return FitMode::exhaustive;
  throw InputError("unknown fit mode '" + text + "'");
}

SignSystem::SignSystem(int host_edges, int genus)
    : host_edges_(host_edges), genus_(genus), system_(static_cast<std::size_t>(host_edges + 2 * genus + 1)) {}

void SignSystem::add(const std::vector<int>& host_edges, const BitVec& homology_class, bool negative) {
  BitVec row(system_.unknowns());
  for (int e : host_edges) row.flip(static_cast<std::size_t>(e));
  for (int i = 0; i < 2 * genus_; ++i)
    if (homology_class.test(static_cast<std::size_t>(i))) row.set(static_cast<std::size_t>(host_edges_ + i));
  row.set(static_cast<std::size_t>(host_edges_ + 2 * genus_));
  bool rhs = negative;
  for (int i = 0; i < genus_; ++i) rhs ^= homology_class.test(2 * i) && homology_class.test(2 * i + 1);
  ++rows_;
  if (!system_.add(row, rhs)) {
    std::ostringstream msg;
    msg << "sign constraints are infeasible at row " << rows_ << ": edges {";
    for (std::size_t i = 0; i < host_edges.size(); ++i) msg << (i ? "," : "") << host_edges[i];
    msg << "} class " << homology_class.to_string() << " sign " << (negative ? -1 : 1);
    throw InvariantViolation(msg.str());
  }
}

BaseFit SignSystem::solve(const Orientation& seed, FitMode mode) const {
  const auto solution = system_.solve();
  if (!solution) throw InvariantViolation("sign constraints are infeasible");
  BaseFit fit;
  fit.base = seed;
  for (int e = 0; e < host_edges_; ++e)
    if (solution->test(static_cast<std::size_t>(e))) fit.base.flip(static_cast<std::size_t>(e));
  fit.base_form.values = BitVec(static_cast<std::size_t>(2 * genus_));
  for (int i = 0; i < 2 * genus_; ++i)
    fit.base_form.values.set(static_cast<std::size_t>(i), solution->test(static_cast<std::size_t>(host_edges_ + i)));
  fit.epsilon0 = solution->test(static_cast<std::size_t>(host_edges_ + 2 * genus_)) ? -1 : 1;
  fit.mode = mode;
  fit.constraints = rows_;
  return fit;
}

BaseFit fit_base(const FisherBlowup& blowup, const HomologyData& hd, FitMode mode, std::uint64_t cap) {
  const int m = blowup.host_edge_count();
  for (int e = m; e < blowup.graph.edge_count(); ++e) {
    if (hd.edge_class[e].any()) throw InvariantViolation("gadget edge " + std::to_string(e) + " has nonzero class");
  }
  const Orientation& seed = blowup.gadget_orientation;
  const auto order = identity_ordering(blowup.graph.vertex_count());
  SignSystem system(m, hd.genus);
  auto constrain = [&](const EdgeSubset& even) {
    const auto matching = extend_even_to_matching(blowup, even);
    const int sign = matching_sign(order, blowup.graph, seed, matching);
    const auto edges = even.indices();
    system.add(edges, hd.class_of_edges(edges), sign < 0);
  };

  const CycleBasis basis = cycle_basis(blowup.host);
  if (mode == FitMode::exhaustive) {
    EvenSubsetStream stream(basis, cap);
    while (auto even = stream.next()) constrain(*even);
  } else {
    constrain(blowup.host.empty_subset());
    for (std::size_t i = 0; i < basis.cycles.size(); ++i) {
      constrain(basis.cycles[i]);
      for (std::size_t j = 0; j < i; ++j) constrain(basis.cycles[i] ^ basis.cycles[j]);
    }
  }
  return system.solve(seed, mode);
}

PfaffianFamily build_family(const BaseFit& fit, const HomologyData& hd, int host_edge_count) {
  PfaffianFamily family;
  family.genus = hd.genus;
  family.epsilon0 = fit.epsilon0;
  family.base = fit.base;
  family.base_form = fit.base_form;
  family.mode = fit.mode;
  family.host_edge_count = host_edge_count;
  const Rational scale = Rational(1) / Rational(Integer(1) << hd.genus);
  for (QuadraticForm& q : all_quadratic_forms(hd.genus)) {
    FamilyMember member;
    const BitVec linear = q.values ^ fit.base_form.values;
    member.flips = BitVec(static_cast<std::size_t>(host_edge_count));
    member.orientation = fit.base;
    for (int e = 0; e < host_edge_count; ++e) {
      if (dot(linear, hd.edge_class[e])) {
        member.flips.set(static_cast<std::size_t>(e));
        member.orientation.flip(static_cast<std::size_t>(e));
      }
    }
    member.arf = arf(q);
    member.alpha = (member.arf ? -fit.epsilon0 : fit.epsilon0) * scale;
    member.form = std::move(q);
    family.members.push_back(std::move(member));
  }
  return family;
}

ArfIdentityReport arf_identities(int genus) {
  ArfIdentityReport report;
  report.genus = genus;
  const auto forms = all_quadratic_forms(genus);
  const std::size_t count = forms.size();
  const std::size_t dim = static_cast<std::size_t>(2 * genus);

  Eigen::MatrixXi signs(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  for (std::size_t f = 0; f < count; ++f) {
    const bool closed = arf(forms[f]);
    if (closed != arf_by_counting(forms[f])) {
      report.closed_form_agrees = false;
      if (!report.witness) report.witness = {f, 0};
    }
    if (!closed) ++report.arf_zero_count;
    for (std::size_t x = 0; x < count; ++x) signs(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(x)) = forms[f](bits_of(x, dim)) ? -1 : 1;
  }

  const std::int64_t two_g = std::int64_t{1} << genus;
  for (std::size_t x = 0; x < count; ++x) {
    std::int64_t sum = 0;
    for (std::size_t f = 0; f < count; ++f) sum += (arf(forms[f]) ? -1 : 1) * signs(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(x));
    if (sum != two_g) {
      report.lemma_holds = false;
      if (!report.witness) report.witness = {0, x};
    }
  }

  const Eigen::MatrixXi gram = signs.transpose() * signs;
  const Eigen::MatrixXi expected = static_cast<int>(count) * Eigen::MatrixXi::Identity(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  if (gram != expected) {
    report.orthogonal = false;
    for (Eigen::Index i = 0; i < gram.rows() && !report.witness; ++i)
      for (Eigen::Index j = 0; j < gram.cols() && !report.witness; ++j)
        if (gram(i, j) != expected(i, j)) report.witness = {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
  }
  return report;
}

}  // namespace arfpf
