#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arfpf/bits.hpp"
#include "arfpf/fisher.hpp"
#include "arfpf/pfaffian.hpp"
#include "arfpf/scalar.hpp"
#include "arfpf/surface.hpp"

namespace arfpf {

// Quadratic refinement of the intersection form, stored by its values on the
// symplectic basis a_1, b_1, ..., a_g, b_g.
struct QuadraticForm {
  BitVec values;

  int genus() const { return static_cast<int>(values.size() / 2); }
  bool operator()(const BitVec& x) const;
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

// The 4^g forms, the t-th taking bit i of t on basis vector i.
std::vector<QuadraticForm> all_quadratic_forms(int genus);

// Closed form: sum of q(a_i) q(b_i).
bool arf(const QuadraticForm& q);
// Majority value of q over all 4^g classes.
bool arf_by_counting(const QuadraticForm& q);

// +1 or -1: sign of the permutation listing the matched pairs (low position
// first, pairs by increasing low position) times -1 for every matched edge
// directed from high to low position.
int matching_sign(std::span<const int> position, const Multigraph& g, const Orientation& d,
                  std::span<const int> matching);

enum class FitMode { quadratic, exhaustive };

std::string to_string(FitMode mode);
FitMode parse_fit_mode(const std::string& text);

struct BaseFit {
  Orientation base;            // seed flipped on the solved host edges
  QuadraticForm base_form;
  int epsilon0 = 1;
  FitMode mode = FitMode::quadratic;
  std::size_t constraints = 0;
};

// Linear system over F2 in the unknowns (s_e for host edges, q~ on the
// basis, epsilon): one row per edge set whose sign is known.
class SignSystem {
 public:
  SignSystem(int host_edges, int genus);

  // Throws InvariantViolation naming the constraint if it contradicts the
  // rows added so far.
  void add(const std::vector<int>& host_edges, const BitVec& homology_class, bool negative);

  BaseFit solve(const Orientation& seed, FitMode mode) const;

 private:
  int host_edges_;
  int genus_;
  F2System system_;
  std::size_t rows_ = 0;
};

// Solves for the base orientation, form and sign from Fisher-extended even
// sets. Requires homology data whose tree contains every gadget path edge.
BaseFit fit_base(const FisherBlowup& blowup, const HomologyData& hd, FitMode mode,
                 std::uint64_t cap = kDefaultEnumerationCap);

struct FamilyMember {
  QuadraticForm form;
  bool arf = false;
  EdgeSubset flips;         // host edges where this orientation differs from the base
  Orientation orientation;
  Rational alpha;
};

struct PfaffianFamily {
  int genus = 0;
  int epsilon0 = 1;
  Orientation base;
  QuadraticForm base_form;
  FitMode mode = FitMode::quadratic;
  int host_edge_count = 0;
  std::vector<FamilyMember> members;  // ordered by the form's bit pattern

  // epsilon0 (-1)^q(x)
  int predicted_sign(const FamilyMember& member, const BitVec& x) const {
    return member.form(x) ? -epsilon0 : epsilon0;
  }
};

PfaffianFamily build_family(const BaseFit& fit, const HomologyData& hd, int host_edge_count);

struct ArfIdentityReport {
  int genus = 0;
  std::size_t arf_zero_count = 0;
  bool closed_form_agrees = true;
  bool lemma_holds = true;       // (1/2^g) sum_q (-1)^Arf(q) (-1)^q(x) = 1 for all x
  bool orthogonal = true;        // M^T M = 4^g I for M = ((-1)^q(x))
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (form index, class index)
};

// Exhaustive check over all forms and classes; intended for genus <= 3.
ArfIdentityReport arf_identities(int genus);

}  // namespace arfpf
