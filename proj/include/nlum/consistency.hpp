#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nlum/assessment.hpp"
#include "nlum/events.hpp"
#include "nlum/nl_model.hpp"
#include "nlum/rational.hpp"

namespace nlum {

// Witnesses carried by verdicts. Every witness is re-verified against the
// defining inequality before a verdict is returned; a checker that cannot
// re-verify its own witness throws.

/// Violating events, in the role order of the failed condition
/// (e.g. a monotone pair A subset-of B with value(A) > value(B)).
struct EventListWitness {
  std::vector<Event> events;
};

/// A probability on the atoms: dominating probability for sure-loss checks,
/// or the common probability of a precise assessment.
struct ProbabilityWitness {
  std::vector<Rational> atom_weights;
};

/// Stakes producing a uniformly negative gain, certifying the failure of a
/// betting-style consistency notion. The optional entry carries the one
/// permitted negative-direction stake.
struct StakeTerm {
  Event event;
  Rational stake;
};
struct StakeWitness {
  std::vector<StakeTerm> stakes;
  std::optional<StakeTerm> opposite;
};

/// Index and side of a violated per-atom reachability inequality.
struct ReachabilityWitness {
  int atom = 0;
  bool upper_inequality = false;  // true: u_i + sum l_j > 1; false: l_i + sum u_j < 1
};

using Witness =
    std::variant<EventListWitness, ProbabilityWitness, StakeWitness, ReachabilityWitness>;

struct Verdict {
  bool holds = false;
  std::optional<Witness> witness;
  std::string detail;
};

/// Event/value pairs over an explicit sub-domain of the algebra; several
/// checkers accept these where the full-algebra assumption is too strong.
using Assignment = std::vector<std::pair<Event, Rational>>;

// ---------------------------------------------------------------------------
// Set-function properties (orientation-free).

Verdict is_capacity(const Assessment& a);
Verdict is_2monotone(const Assessment& a);
Verdict is_2alternating(const Assessment& a);
Verdict is_subadditive(const Assessment& a);
Verdict is_superadditive(const Assessment& a);  // over disjoint pairs
Verdict is_quasi_superadditive(const Assessment& a);

// ---------------------------------------------------------------------------
// Betting-consistency notions. The assessment's orientation selects the
// lower- or upper-probability form of each notion.

/// Monotonicity, boundary values and value(A) + value(~A) bounded by 1
/// (dually for upper assessments). Falls back to the stake search when the
/// assessment has values outside the sign range the characterisation needs.
Verdict is_2coherent(const Assessment& a);

/// Non-emptiness of the set of dominating (dominated, for upper) precise
/// probabilities, decided by exact LP feasibility.
Verdict avoids_sure_loss(const Assessment& a);

/// Envelope check: for every event, the LP extremum of P(E) over the
/// dominating probabilities must reproduce the assessed value.
Verdict is_coherent(const Assessment& a);

/// Lower-coherence envelope check over an explicit assignment; the same
/// event may appear twice (with conflicting values, coherence then fails).
Verdict is_coherent_lower_on(const Partition& p, const Assignment& assignment);

/// Shifted-probability envelope: for every event E of the domain there must
/// be a probability P and shift t with P + t dominating the assessment and
/// P(E) + t attaining it.
Verdict is_convex(const Assessment& a);
Verdict is_convex_lower_on(const Partition& p, const Assignment& assignment);
Verdict is_c_convex(const Assessment& a);

/// Additivity test per the two equivalent routes (sure loss + conjugacy
/// sums, and direct finite additivity); both are evaluated and must agree.
Verdict is_precise_probability(const Assessment& a);

enum class GainNotion { Coherence, Convexity, AvoidSureLoss, TwoCoherence };

/// Searches for stakes whose gain is uniformly negative on the atoms, via
/// exact LP over the stake space. holds == true means no such stakes exist.
/// Agrees with the predicate/envelope checker for the same notion.
Verdict gain_incoherence_search(const Assessment& a, GainNotion notion);

// ---------------------------------------------------------------------------
// Families of events.

Verdict is_filter(const Partition& p, const std::vector<Event>& family);
Verdict is_ideal(const Partition& p, const std::vector<Event>& family);

// ---------------------------------------------------------------------------
// Structure results specific to the heavy-tailed (horizontal barrier) family.

struct HbmEssentialEntry {
  Event event;
  int carrier_atom = -1;  // unique atom whose upper value the event inherits
  int partner_atom = -1;  // distinct atom completing the overlap inequality
};

struct HbmStructureReport {
  std::vector<HbmEssentialEntry> essential;
  std::vector<int> essential_atoms;          // essential atoms of the upper side
  bool decomposition_ok = true;              // unique carrier + null zero-mass rest
  bool partner_ok = true;                    // every entry found its partner atom
  std::optional<Rational> slope_bound;       // strict lower bound on b, when defined
  bool slope_bound_holds = true;
  std::size_t distinct_value_count = 0;
  bool value_count_ok = true;                // at most n + 2 distinct values
};

/// Decomposition of the essential events of a subadditive HBM upper side.
/// Throws when the model is not an HBM or its upper side is not subadditive.
HbmStructureReport hbm_structure(const NLModel& model);

/// Coherence through the family's characterisation: subadditivity of the
/// upper side, or the dual overlap inequality of the lower side. Agrees with
/// the envelope oracle. Throws on models outside the family.
Verdict hbm_is_coherent_fast(const NLModel& model);

/// Precision decided by both family characterisations (the two-case coherent
/// one and the inequality pair), cross-checked against
/// is_precise_probability; disagreement throws.
Verdict hbm_precise_check(const NLModel& model);

}  // namespace nlum
