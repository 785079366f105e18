#pragma once

#include <utility>
#include <vector>

#include "nlum/assessment.hpp"
#include "nlum/consistency.hpp"
#include "nlum/events.hpp"
#include "nlum/nl_model.hpp"
#include "nlum/rational.hpp"

namespace nlum {

/// Per-atom probability bounds [l_i, u_i] with 0 <= l_i <= u_i <= 1.
class ProbabilityInterval {
 public:
  ProbabilityInterval(Partition partition, std::vector<Rational> lower,
                      std::vector<Rational> upper);

  const Partition& partition() const { return partition_; }
  const std::vector<Rational>& lower() const { return lower_; }
  const std::vector<Rational>& upper() const { return upper_; }

 private:
  Partition partition_;
  std::vector<Rational> lower_;
  std::vector<Rational> upper_;
};

/// Per-atom inequalities u_i + sum_{j!=i} l_j <= 1 and
/// l_i + sum_{j!=i} u_j >= 1. Agrees with lower coherence of the interval
/// read as an assignment on the atoms and their complements.
Verdict is_reachable(const ProbabilityInterval& interval);

/// The interval as a lower assignment on atoms (value l_i) and atom
/// complements (value 1 - u_i).
Assignment interval_assignment(const ProbabilityInterval& interval);

/// Least-committal coherent extension (l(A), u(A)) of a reachable interval.
/// Throws on unreachable intervals.
std::pair<Rational, Rational> natural_extension(const ProbabilityInterval& interval,
                                                const Event& a);

/// Full lower extension l(.) over the algebra, as a lower assessment.
Assessment natural_extension_lower(const ProbabilityInterval& interval);

/// Atom bounds of the conjugate couple: l from the lower side, u from the
/// upper side. Throws when they cross (no valid interval).
ProbabilityInterval atom_restriction(const NLModel& model);

/// Brute-force test that the couple coincides eventwise with the natural
/// extension of its atom restriction. Family closed forms (always for
/// pari-mutuel and related special cases, the three-atom/concentrated
/// conditions for the vertical-barrier family, coherence for the
/// horizontal-barrier family, binary partitions for the restricted-range
/// family) are evaluated alongside and must agree with the brute-force
/// verdict; a mismatch throws.
Verdict nl_equals_extended_interval(const NLModel& model);

}  // namespace nlum
