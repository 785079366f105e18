#include "nlum/consistency.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nlum/lp.hpp"

namespace nlum {

namespace {

Verdict pass(std::string detail = {}) { return {true, std::nullopt, std::move(detail)}; }

Verdict fail(Witness witness, std::string detail) {
  return {false, std::move(witness), std::move(detail)};
}

std::string ename(const Partition& p, const Event& e) { return p.event_name(e); }

Assignment full_assignment(const Assessment& a) {
  Assignment items;
  items.reserve(a.partition().event_count());
  for (std::uint64_t m = 0; m < a.partition().event_count(); ++m)
    items.emplace_back(a.partition().event(m), a.value(m));
  return items;
}

Rational atom_sum(const std::vector<Rational>& weights, const Event& e) {
  Rational out(0);
  for (int i = 0; i < e.atom_count; ++i)
    if (e.contains_atom(i)) out += weights[i];
  return out;
}

// Gain of a unit bet on E at price v, evaluated at an atom. Lower form pays
// the indicator against the price; the upper form is its mirror.
Rational gain_at(const Event& e, const Rational& v, int atom, bool lower_form) {
  Rational indicator(e.contains_atom(atom) ? 1 : 0);
  return lower_form ? indicator - v : v - indicator;
}

// --- constraint pruning -----------------------------------------------------
//
// A domination row P(B) >= v_B (lower form) is implied by P(A) >= v_A when
// A is a subset of B and v_A >= v_B; without a shift variable, rows with
// v <= 0 are implied by non-negativity alone. Mirrored for the upper form.
// Tie-breaking on equal events/values keeps exactly one copy.
std::vector<char> prune_keep(const Assignment& items, bool lower_form, bool with_shift) {
  const std::size_t k = items.size();
  std::vector<char> keep(k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    const Event& ei = items[i].first;
    const Rational& vi = items[i].second;
    if (!with_shift) {
      if (lower_form && vi.sign() <= 0) { keep[i] = 0; continue; }
      if (!lower_form && vi >= Rational(1)) { keep[i] = 0; continue; }
    }
    for (std::size_t j = 0; j < k && keep[i]; ++j) {
      if (j == i) continue;
      const Event& ej = items[j].first;
      const Rational& vj = items[j].second;
      bool subset = lower_form ? (ej.mask & ~ei.mask) == 0 : (ei.mask & ~ej.mask) == 0;
      if (!subset) continue;
      bool strict_event = ei.mask != ej.mask;
      bool dominates = lower_form ? vj > vi : vj < vi;
      if (dominates || (vj == vi && (strict_event || j < i))) keep[i] = 0;
    }
  }
  return keep;
}

void append_probability_rows(int n, std::vector<Simplex::Row>& rows) {
  Simplex::Row up{std::vector<Rational>(n, Rational(1)), Rational(1)};
  Simplex::Row down{std::vector<Rational>(n, Rational(-1)), Rational(-1)};
  rows.push_back(std::move(up));
  rows.push_back(std::move(down));
}

std::vector<Simplex::Row> domination_rows(const Partition& p, const Assignment& items,
                                          bool lower_form) {
  std::vector<Simplex::Row> rows;
  append_probability_rows(p.size(), rows);
  std::vector<char> keep = prune_keep(items, lower_form, /*with_shift=*/false);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!keep[i]) continue;
    const auto& [e, v] = items[i];
    std::vector<Rational> coeffs(p.size(), Rational(0));
    for (int t = 0; t < p.size(); ++t)
      if (e.contains_atom(t)) coeffs[t] = lower_form ? Rational(-1) : Rational(1);
    rows.push_back({std::move(coeffs), lower_form ? -v : v});
  }
  return rows;
}

std::vector<Rational> indicator_vector(const Partition& p, const Event& e) {
  std::vector<Rational> out(p.size(), Rational(0));
  for (int t = 0; t < p.size(); ++t)
    if (e.contains_atom(t)) out[t] = Rational(1);
  return out;
}

void verify_probability(const std::vector<Rational>& weights) {
  Rational total(0);
  for (const auto& w : weights) {
    if (w.sign() < 0) throw std::logic_error("witness probability has a negative weight");
    total += w;
  }
  if (total != Rational(1)) throw std::logic_error("witness probability does not sum to 1");
}

void verify_dominating(const Assignment& items, const std::vector<Rational>& weights,
                       bool lower_form) {
  verify_probability(weights);
  for (const auto& [e, v] : items) {
    Rational pe = atom_sum(weights, e);
    if (lower_form ? pe < v : pe > v)
      throw std::logic_error("witness probability fails to dominate the assessment");
  }
}

// Stake terms keep the price alongside, so the gain can be recomputed
// without the original assessment at hand.
struct PricedStake {
  Event event;
  Rational price;
  Rational stake;
};

struct StakeSystem {
  std::vector<PricedStake> positive;
  std::optional<PricedStake> opposite;
};

void verify_stake_system(const Partition& p, const StakeSystem& sys, bool lower_form,
                         bool convex_form) {
  if (convex_form) {
    Rational sum(0);
    for (const auto& t : sys.positive) sum += t.stake;
    if (sum != Rational(1)) throw std::logic_error("convexity stakes are off the simplex");
    if (!sys.opposite || sys.opposite->stake != Rational(1))
      throw std::logic_error("convexity opposite stake must be 1");
  }
  for (const auto& t : sys.positive)
    if (t.stake.sign() < 0) throw std::logic_error("negative direct stake in witness");
  for (int atom = 0; atom < p.size(); ++atom) {
    Rational g(0);
    for (const auto& t : sys.positive)
      g += t.stake * gain_at(t.event, t.price, atom, lower_form);
    if (sys.opposite)
      g -= sys.opposite->stake * gain_at(sys.opposite->event, sys.opposite->price, atom, lower_form);
    if (g.sign() >= 0)
      throw std::logic_error("witness stakes do not yield a uniformly negative gain");
  }
}

StakeWitness to_witness(const StakeSystem& sys) {
  StakeWitness w;
  for (const auto& t : sys.positive)
    if (t.stake.sign() != 0) w.stakes.push_back({t.event, t.stake});
  if (sys.opposite) w.opposite = StakeTerm{sys.opposite->event, sys.opposite->stake};
  return w;
}

// --- stake searches ----------------------------------------------------------

// Feasibility of: sum_i s_i gain_i(atom) (- s0 gain_0(atom)) <= -1 on every
// atom. Variables are one stake per assignment item, plus the opposite-term
// stake when `opposite` is set.
std::optional<StakeSystem> search_homogeneous_stakes(const Partition& p,
                                                     const Assignment& items,
                                                     bool lower_form,
                                                     std::optional<std::size_t> opposite,
                                                     bool opposite_free) {
  const std::size_t k = items.size();
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  lp.objective.assign(k + (opposite ? 1 : 0), Rational(0));
  if (opposite && opposite_free) {
    lp.lower_bounds.assign(k + 1, std::optional<Rational>(Rational(0)));
    lp.lower_bounds[k] = std::nullopt;
  }
  for (int atom = 0; atom < p.size(); ++atom) {
    Constraint con;
    con.coeffs.reserve(k + (opposite ? 1 : 0));
    for (std::size_t i = 0; i < k; ++i)
      con.coeffs.push_back(gain_at(items[i].first, items[i].second, atom, lower_form));
    if (opposite)
      con.coeffs.push_back(-gain_at(items[*opposite].first, items[*opposite].second, atom,
                                    lower_form));
    con.rel = Relation::LessEq;
    con.rhs = Rational(-1);
    lp.constraints.push_back(std::move(con));
  }
  LPResult res = solve(lp);
  if (res.status != LPStatus::Optimal) return std::nullopt;

  StakeSystem sys;
  for (std::size_t i = 0; i < k; ++i)
    if (res.solution[i].sign() != 0)
      sys.positive.push_back({items[i].first, items[i].second, res.solution[i]});
  if (opposite)
    sys.opposite = PricedStake{items[*opposite].first, items[*opposite].second,
                               res.solution[k]};
  verify_stake_system(p, sys, lower_form, /*convex_form=*/false);
  return sys;
}

std::optional<StakeSystem> search_stakes_asl(const Partition& p, const Assignment& items,
                                             bool lower_form) {
  return search_homogeneous_stakes(p, items, lower_form, std::nullopt, false);
}

std::optional<StakeSystem> search_stakes_coherence(const Partition& p,
                                                   const Assignment& items,
                                                   bool lower_form) {
  for (std::size_t a0 = 0; a0 < items.size(); ++a0) {
    auto sys = search_homogeneous_stakes(p, items, lower_form, a0, /*free=*/false);
    if (sys) return sys;
  }
  return std::nullopt;
}

std::optional<StakeSystem> search_stakes_2coherence(const Partition& p,
                                                    const Assignment& items,
                                                    bool lower_form) {
  for (std::size_t a0 = 0; a0 < items.size(); ++a0) {
    for (std::size_t a1 = 0; a1 < items.size(); ++a1) {
      // Restricted system: one non-negative stake on a1, one free stake on a0.
      LinearProgram lp;
      lp.sense = Sense::Minimize;
      lp.objective.assign(2, Rational(0));
      lp.lower_bounds = {Rational(0), std::nullopt};
      for (int atom = 0; atom < p.size(); ++atom) {
        Constraint con;
        con.coeffs = {gain_at(items[a1].first, items[a1].second, atom, lower_form),
                      -gain_at(items[a0].first, items[a0].second, atom, lower_form)};
        con.rel = Relation::LessEq;
        con.rhs = Rational(-1);
        lp.constraints.push_back(std::move(con));
      }
      LPResult res = solve(lp);
      if (res.status != LPStatus::Optimal) continue;
      StakeSystem out;
      out.positive.push_back({items[a1].first, items[a1].second, res.solution[0]});
      out.opposite = PricedStake{items[a0].first, items[a0].second, res.solution[1]};
      verify_stake_system(p, out, lower_form, false);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<StakeSystem> search_stakes_convexity(const Partition& p,
                                                   const Assignment& items,
                                                   bool lower_form) {
  const std::size_t k = items.size();
  for (std::size_t a0 = 0; a0 < k; ++a0) {
    // Stakes on the simplex, opposite stake pinned to 1; minimize the
    // worst-atom gain and test for strict negativity.
    LinearProgram lp;
    lp.sense = Sense::Minimize;
    lp.objective.assign(k + 1, Rational(0));
    lp.objective[k] = Rational(1);  // t
    lp.lower_bounds.assign(k + 1, std::optional<Rational>(Rational(0)));
    lp.lower_bounds[k] = std::nullopt;
    for (int atom = 0; atom < p.size(); ++atom) {
      Constraint con;
      con.coeffs.assign(k + 1, Rational(0));
      for (std::size_t i = 0; i < k; ++i)
        con.coeffs[i] = gain_at(items[i].first, items[i].second, atom, lower_form);
      con.coeffs[k] = Rational(-1);
      con.rhs = gain_at(items[a0].first, items[a0].second, atom, lower_form);
      con.rel = Relation::LessEq;
      lp.constraints.push_back(std::move(con));
    }
    Constraint simplex_row;
    simplex_row.coeffs.assign(k + 1, Rational(1));
    simplex_row.coeffs[k] = Rational(0);
    simplex_row.rel = Relation::Equal;
    simplex_row.rhs = Rational(1);
    lp.constraints.push_back(std::move(simplex_row));

    LPResult res = solve(lp);
    if (res.status != LPStatus::Optimal)
      throw std::logic_error("convexity stake program must be solvable");
    if (res.optimum.sign() >= 0) continue;
    StakeSystem out;
    for (std::size_t i = 0; i < k; ++i)
      if (res.solution[i].sign() != 0)
        out.positive.push_back({items[i].first, items[i].second, res.solution[i]});
    out.opposite = PricedStake{items[a0].first, items[a0].second, Rational(1)};
    verify_stake_system(p, out, lower_form, /*convex_form=*/true);
    return out;
  }
  return std::nullopt;
}

// --- envelope machinery ------------------------------------------------------

Verdict sure_loss_failure(const Partition& p, const Assignment& items, bool lower_form) {
  auto stakes = search_stakes_asl(p, items, lower_form);
  if (!stakes)
    throw std::logic_error("infeasible domination system without sure-loss stakes");
  return fail(to_witness(*stakes),
              "no probability dominates the assessment (sure loss)");
}

Verdict envelope_check(const Partition& p, const Assignment& items, bool lower_form) {
  Simplex simplex(p.size(), domination_rows(p, items, lower_form));
  if (!simplex.ensure_feasible()) return sure_loss_failure(p, items, lower_form);

  std::vector<Rational> dominating = simplex.current_solution();
  verify_dominating(items, dominating, lower_form);

  for (const auto& [e, v] : items) {
    auto opt = lower_form ? simplex.minimize(indicator_vector(p, e))
                          : simplex.maximize(indicator_vector(p, e));
    if (!opt) throw std::logic_error("probability polytope cannot be unbounded");
    if (opt->value != v) {
      std::ostringstream os;
      os << "envelope " << (lower_form ? "minimum " : "maximum ") << opt->value.str()
         << " differs from assessed value " << v.str() << " at " << ename(p, e);
      return fail(EventListWitness{{e}}, os.str());
    }
  }
  Verdict ok = pass("assessment is the pointwise envelope of its dominating probabilities");
  ok.witness = ProbabilityWitness{std::move(dominating)};
  return ok;
}

Verdict feasibility_check(const Partition& p, const Assignment& items, bool lower_form) {
  Simplex simplex(p.size(), domination_rows(p, items, lower_form));
  if (!simplex.ensure_feasible()) return sure_loss_failure(p, items, lower_form);
  std::vector<Rational> dominating = simplex.current_solution();
  verify_dominating(items, dominating, lower_form);
  Verdict ok = pass("a dominating probability exists");
  ok.witness = ProbabilityWitness{std::move(dominating)};
  return ok;
}

Verdict convexity_check(const Partition& p, const Assignment& items) {
  // Lower form only. Variables: atom probabilities plus one free shift.
  const int n = p.size();
  std::vector<char> keep = prune_keep(items, /*lower_form=*/true, /*with_shift=*/true);

  LinearProgram base;
  base.sense = Sense::Minimize;
  base.objective.assign(n + 1, Rational(0));
  base.lower_bounds.assign(n + 1, std::optional<Rational>(Rational(0)));
  base.lower_bounds[n] = std::nullopt;  // shift
  Constraint total;
  total.coeffs.assign(n + 1, Rational(1));
  total.coeffs[n] = Rational(0);
  total.rel = Relation::Equal;
  total.rhs = Rational(1);
  base.constraints.push_back(std::move(total));
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!keep[i]) continue;
    Constraint con;
    con.coeffs = indicator_vector(p, items[i].first);
    con.coeffs.push_back(Rational(1));
    con.rel = Relation::GreaterEq;
    con.rhs = items[i].second;
    base.constraints.push_back(std::move(con));
  }

  for (const auto& [e, v] : items) {
    LinearProgram lp = base;
    Constraint attain;
    attain.coeffs = indicator_vector(p, e);
    attain.coeffs.push_back(Rational(1));
    attain.rel = Relation::Equal;
    attain.rhs = v;
    lp.constraints.push_back(std::move(attain));
    if (solve(lp).status == LPStatus::Infeasible) {
      std::ostringstream os;
      os << "no shifted probability attains the assessed value at " << ename(p, e);
      return fail(EventListWitness{{e}}, os.str());
    }
  }
  return pass("every event is attained by a shifted dominating probability");
}

Witness complement_events(const Partition& p, Witness w) {
  if (auto* evs = std::get_if<EventListWitness>(&w)) {
    for (auto& e : evs->events) e = e.complement();
  }
  (void)p;
  return w;
}

// --- pairwise scans ----------------------------------------------------------

template <typename Cond>
Verdict pairwise_scan(const Assessment& a, Cond cond, bool disjoint_only,
                      const char* what) {
  const Partition& p = a.partition();
  const std::uint64_t count = p.event_count();
  for (std::uint64_t i = 0; i < count; ++i) {
    for (std::uint64_t j = i; j < count; ++j) {
      if (disjoint_only && (i & j) != 0) continue;
      if (cond(a.value(i), a.value(j), a.value(i | j), a.value(i & j))) continue;
      Event A = p.event(i), B = p.event(j);
      std::ostringstream os;
      os << what << " fails at (" << ename(p, A) << ", " << ename(p, B) << ")";
      return fail(EventListWitness{{A, B}}, os.str());
    }
  }
  return pass();
}

Rational max_value(const Assessment& a) {
  Rational out = a.value(std::uint64_t{0});
  for (const auto& v : a.values())
    if (v > out) out = v;
  return out;
}

}  // namespace

// --- set-function properties -------------------------------------------------

Verdict is_capacity(const Assessment& a) {
  const Partition& p = a.partition();
  const std::uint64_t full = p.event_count() - 1;
  if (a.value(std::uint64_t{0}) != Rational(0))
    return fail(EventListWitness{{p.empty_event()}},
                "value at the empty event is " + a.value(std::uint64_t{0}).str() +
                    ", expected 0");
  if (a.value(full) != Rational(1))
    return fail(EventListWitness{{p.full_event()}},
                "value at the full event is " + a.value(full).str() + ", expected 1");
  for (std::uint64_t m = 0; m <= full; ++m) {
    for (int t = 0; t < p.size(); ++t) {
      if ((m >> t) & 1u) continue;
      std::uint64_t up = m | (1ull << t);
      if (a.value(m) > a.value(up)) {
        Event A = p.event(m), B = p.event(up);
        return fail(EventListWitness{{A, B}},
                    "monotonicity fails: value(" + ename(p, A) + ")=" +
                        a.value(m).str() + " > value(" + ename(p, B) + ")=" +
                        a.value(up).str());
      }
    }
  }
  return pass("normalised and monotone");
}

Verdict is_2monotone(const Assessment& a) {
  return pairwise_scan(
      a,
      [](const Rational& vA, const Rational& vB, const Rational& vJoin,
         const Rational& vMeet) { return vJoin + vMeet >= vA + vB; },
      false, "supermodular inequality");
}

Verdict is_2alternating(const Assessment& a) {
  return pairwise_scan(
      a,
      [](const Rational& vA, const Rational& vB, const Rational& vJoin,
         const Rational& vMeet) { return vJoin + vMeet <= vA + vB; },
      false, "submodular inequality");
}

Verdict is_subadditive(const Assessment& a) {
  return pairwise_scan(
      a,
      [](const Rational& vA, const Rational& vB, const Rational& vJoin,
         const Rational&) { return vJoin <= vA + vB; },
      false, "subadditivity");
}

Verdict is_superadditive(const Assessment& a) {
  return pairwise_scan(
      a,
      [](const Rational& vA, const Rational& vB, const Rational& vJoin,
         const Rational&) { return vJoin >= vA + vB; },
      true, "superadditivity");
}

Verdict is_quasi_superadditive(const Assessment& a) {
  return pairwise_scan(
      a,
      [](const Rational& vA, const Rational& vB, const Rational&,
         const Rational& vMeet) { return Rational(1) + vMeet >= vA + vB; },
      false, "overlap inequality");
}

// --- betting-consistency notions ----------------------------------------------

Verdict is_2coherent(const Assessment& a) {
  const bool lower = a.orientation() == Orientation::Lower;
  const Partition& p = a.partition();

  if (lower ? a.min_value().sign() < 0 : max_value(a) > Rational(1)) {
    Verdict v = gain_incoherence_search(a, GainNotion::TwoCoherence);
    v.detail = "values outside the characterisation range; decided by stake search. " +
               v.detail;
    return v;
  }

  Verdict cap = is_capacity(a);
  if (!cap.holds) return cap;

  const std::uint64_t count = p.event_count();
  const std::uint64_t full = count - 1;
  for (std::uint64_t m = 0; m < count; ++m) {
    Rational sum = a.value(m) + a.value(full & ~m);
    bool ok = lower ? sum <= Rational(1) : sum >= Rational(1);
    if (!ok) {
      Event e = p.event(m);
      std::ostringstream os;
      os << "value(" << ename(p, e) << ") + value(" << ename(p, e.complement())
         << ") = " << sum.str() << (lower ? " exceeds 1" : " is below 1");
      return fail(EventListWitness{{e}}, os.str());
    }
  }
  return pass("monotone, normalised, with complement sums on the right side of 1");
}

Verdict avoids_sure_loss(const Assessment& a) {
  return feasibility_check(a.partition(), full_assignment(a),
                           a.orientation() == Orientation::Lower);
}

Verdict is_coherent(const Assessment& a) {
  return envelope_check(a.partition(), full_assignment(a),
                        a.orientation() == Orientation::Lower);
}

Verdict is_coherent_lower_on(const Partition& p, const Assignment& assignment) {
  return envelope_check(p, assignment, /*lower_form=*/true);
}

Verdict is_convex(const Assessment& a) {
  if (a.orientation() == Orientation::Lower)
    return convexity_check(a.partition(), full_assignment(a));
  Assessment conj = a.conjugate();
  Verdict v = convexity_check(conj.partition(), full_assignment(conj));
  if (v.witness) v.witness = complement_events(a.partition(), *v.witness);
  v.detail += " (decided on the conjugate lower side)";
  return v;
}

Verdict is_convex_lower_on(const Partition& p, const Assignment& assignment) {
  return convexity_check(p, assignment);
}

Verdict is_c_convex(const Assessment& a) {
  const bool lower = a.orientation() == Orientation::Lower;
  const Rational at_empty = a.value(std::uint64_t{0});
  if (lower && at_empty != Rational(0))
    return fail(EventListWitness{{a.partition().empty_event()}},
                "value at the empty event is " + at_empty.str() + ", expected 0");
  if (!lower && a.value(a.partition().event_count() - 1) != Rational(1))
    return fail(EventListWitness{{a.partition().full_event()}},
                "value at the full event must be 1 on the upper side");
  return is_convex(a);
}

Verdict is_precise_probability(const Assessment& a) {
  const Partition& p = a.partition();
  const std::uint64_t count = p.event_count();
  const std::uint64_t full = count - 1;

  // Route one: sure loss plus complement sums pinned at 1.
  Verdict asl = feasibility_check(p, full_assignment(a), /*lower_form=*/true);
  bool sums_ok = true;
  Event bad_sum_event = p.empty_event();
  for (std::uint64_t m = 0; m < count && sums_ok; ++m) {
    if (a.value(m) + a.value(full & ~m) != Rational(1)) {
      sums_ok = false;
      bad_sum_event = p.event(m);
    }
  }
  const bool route_one = asl.holds && sums_ok;

  // Route two: non-negative, normalised and additive over disjoint pairs.
  bool route_two = a.value(std::uint64_t{0}) == Rational(0) &&
                   a.value(full) == Rational(1) && a.min_value().sign() >= 0;
  Event bad_pair_a = p.empty_event(), bad_pair_b = p.empty_event();
  if (route_two) {
    for (std::uint64_t i = 0; i < count && route_two; ++i) {
      for (std::uint64_t j = i; j < count; ++j) {
        if ((i & j) != 0) continue;
        if (a.value(i | j) != a.value(i) + a.value(j)) {
          route_two = false;
          bad_pair_a = p.event(i);
          bad_pair_b = p.event(j);
          break;
        }
      }
    }
  }

  if (route_one != route_two)
    throw std::logic_error("precision routes disagree");

  if (route_one) {
    std::vector<Rational> weights(p.size());
    for (int t = 0; t < p.size(); ++t) weights[t] = a.value(p.atom(t));
    verify_probability(weights);
    Verdict ok = pass("additive, normalised and dominated: a precise probability");
    ok.witness = ProbabilityWitness{std::move(weights)};
    return ok;
  }
  if (!asl.holds) return asl;
  if (!sums_ok) {
    std::ostringstream os;
    os << "value(" << ename(p, bad_sum_event) << ") + value("
       << ename(p, bad_sum_event.complement()) << ") differs from 1";
    return fail(EventListWitness{{bad_sum_event}}, os.str());
  }
  std::ostringstream os;
  os << "additivity fails at (" << ename(p, bad_pair_a) << ", " << ename(p, bad_pair_b)
     << ")";
  return fail(EventListWitness{{bad_pair_a, bad_pair_b}}, os.str());
}

Verdict gain_incoherence_search(const Assessment& a, GainNotion notion) {
  const Partition& p = a.partition();
  const bool lower = a.orientation() == Orientation::Lower;
  Assignment items = full_assignment(a);

  std::optional<StakeSystem> found;
  const char* name = "";
  switch (notion) {
    case GainNotion::AvoidSureLoss:
      found = search_stakes_asl(p, items, lower);
      name = "sure loss";
      break;
    case GainNotion::Coherence:
      found = search_stakes_coherence(p, items, lower);
      name = "coherence";
      break;
    case GainNotion::TwoCoherence:
      found = search_stakes_2coherence(p, items, lower);
      name = "2-coherence";
      break;
    case GainNotion::Convexity:
      found = search_stakes_convexity(p, items, lower);
      name = "convexity";
      break;
  }
  if (!found) return pass(std::string("no stakes defeat ") + name);
  return fail(to_witness(*found),
              std::string("stakes with uniformly negative gain defeat ") + name);
}

// --- families of events --------------------------------------------------------

namespace {

std::vector<char> membership(const Partition& p, const std::vector<Event>& family) {
  require_enumerable(p);
  std::vector<char> in(p.event_count(), 0);
  for (const auto& e : family) {
    if (e.atom_count != p.size())
      throw std::invalid_argument("family event over a different partition");
    in[e.mask] = 1;
  }
  return in;
}

}  // namespace

Verdict is_filter(const Partition& p, const std::vector<Event>& family) {
  std::vector<char> in = membership(p, family);
  const std::uint64_t full = p.event_count() - 1;
  if (!in[full]) return fail(EventListWitness{{p.full_event()}}, "full event missing");
  if (in[0]) return fail(EventListWitness{{p.empty_event()}}, "empty event present");
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (!in[m]) continue;
    for (int t = 0; t < p.size(); ++t) {
      std::uint64_t up = m | (1ull << t);
      if (up != m && !in[up])
        return fail(EventListWitness{{p.event(m), p.event(up)}},
                    "not closed upward: " + ename(p, p.event(up)) + " missing");
    }
  }
  for (std::uint64_t i = 0; i <= full; ++i) {
    if (!in[i]) continue;
    for (std::uint64_t j = i; j <= full; ++j) {
      if (!in[j]) continue;
      if (!in[i & j])
        return fail(EventListWitness{{p.event(i), p.event(j)}},
                    "meet " + ename(p, p.event(i & j)) + " missing");
    }
  }
  return pass("a filter");
}

Verdict is_ideal(const Partition& p, const std::vector<Event>& family) {
  std::vector<char> in = membership(p, family);
  const std::uint64_t full = p.event_count() - 1;
  if (!in[0]) return fail(EventListWitness{{p.empty_event()}}, "empty event missing");
  if (in[full]) return fail(EventListWitness{{p.full_event()}}, "full event present");
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (!in[m]) continue;
    for (int t = 0; t < p.size(); ++t) {
      if (!((m >> t) & 1u)) continue;
      std::uint64_t down = m & ~(1ull << t);
      if (!in[down])
        return fail(EventListWitness{{p.event(m), p.event(down)}},
                    "not closed downward: " + ename(p, p.event(down)) + " missing");
    }
  }
  for (std::uint64_t i = 0; i <= full; ++i) {
    if (!in[i]) continue;
    for (std::uint64_t j = i; j <= full; ++j) {
      if (!in[j]) continue;
      if (!in[i | j])
        return fail(EventListWitness{{p.event(i), p.event(j)}},
                    "join " + ename(p, p.event(i | j)) + " missing");
    }
  }
  return pass("an ideal");
}

// --- horizontal-barrier structure ----------------------------------------------

namespace {

void require_hbm(const NLModel& model, bool allow_pmm) {
  ModelTag tag = model.model_class().tag;
  if (tag == ModelTag::Hbm) return;
  if (allow_pmm && tag == ModelTag::Pmm) return;
  throw std::invalid_argument("model is not in the horizontal-barrier family (got " +
                              tag_name(tag) + ")");
}

}  // namespace

HbmStructureReport hbm_structure(const NLModel& model) {
  require_hbm(model, /*allow_pmm=*/false);
  NLModel up = model.upper_side();
  const Partition& p = up.partition();
  Assessment ua = up.to_assessment();
  if (!is_subadditive(ua).holds)
    throw std::invalid_argument("structure results need a subadditive upper side");

  EventSets sets = up.event_sets();
  HbmStructureReport report;

  std::vector<char> atom_essential(p.size(), 0), atom_universal(p.size(), 0);
  for (int t = 0; t < p.size(); ++t) {
    Rational v = up.evaluate(p.atom(t));
    if (v > Rational(0) && v < Rational(1)) {
      atom_essential[t] = 1;
      report.essential_atoms.push_back(t);
    } else if (v == Rational(1)) {
      atom_universal[t] = 1;
    }
  }

  const Rational b = up.params().b;
  const Rational c = up.params().a;  // affine intercept of the upper side
  for (const Event& e : sets.essential_events) {
    HbmEssentialEntry entry;
    entry.event = e;
    int carriers = 0;
    for (int t = 0; t < p.size(); ++t) {
      if (!e.contains_atom(t)) continue;
      if (atom_essential[t]) {
        ++carriers;
        entry.carrier_atom = t;
      } else if (up.evaluate(p.atom(t)) != Rational(0) ||
                 up.p0().weight(t).sign() != 0) {
        report.decomposition_ok = false;  // non-carrier atoms must be null with zero mass
      }
    }
    if (carriers != 1 || up.evaluate(e) != up.evaluate(p.atom(entry.carrier_atom)))
      report.decomposition_ok = false;

    // Partner atom: a distinct essential-or-universal atom closing the
    // overlap inequality b P0(carrier) + c + b P0(partner) + c >= 1.
    if (entry.carrier_atom >= 0) {
      for (int t = 0; t < p.size(); ++t) {
        if (t == entry.carrier_atom || (!atom_essential[t] && !atom_universal[t]))
          continue;
        Rational lhs = b * up.p0().weight(entry.carrier_atom) + c +
                       b * up.p0().weight(t) + c;
        if (lhs >= Rational(1)) {
          entry.partner_atom = t;
          break;
        }
      }
      if (entry.partner_atom < 0) report.partner_ok = false;
    }
    report.essential.push_back(entry);
  }

  // Slope bound: with 2m essential atoms, b must exceed both m and every
  // reciprocal pairwise sum of essential-atom upper values.
  const int k = static_cast<int>(report.essential_atoms.size());
  if (k >= 2) {
    Rational bound(k / 2);
    for (std::size_t i = 0; i < report.essential_atoms.size(); ++i) {
      for (std::size_t j = i + 1; j < report.essential_atoms.size(); ++j) {
        Rational sum = up.evaluate(p.atom(report.essential_atoms[i])) +
                       up.evaluate(p.atom(report.essential_atoms[j]));
        Rational rec = Rational(1) / sum;
        if (rec > bound) bound = rec;
      }
    }
    report.slope_bound = bound;
    report.slope_bound_holds = b > bound;
  }

  std::set<Rational> distinct;
  for (const auto& v : ua.values()) distinct.insert(v);
  report.distinct_value_count = distinct.size();
  report.value_count_ok =
      report.distinct_value_count <= static_cast<std::size_t>(p.size()) + 2;
  return report;
}

Verdict hbm_is_coherent_fast(const NLModel& model) {
  require_hbm(model, /*allow_pmm=*/true);
  if (model.orientation() == Orientation::Upper) {
    Verdict v = is_subadditive(model.to_assessment());
    v.detail = "coherence via subadditivity of the upper side. " + v.detail;
    return v;
  }
  Verdict v = is_quasi_superadditive(model.to_assessment());
  v.detail = "coherence via the overlap inequality of the lower side. " + v.detail;
  return v;
}

Verdict hbm_precise_check(const NLModel& model) {
  require_hbm(model, /*allow_pmm=*/false);
  NLModel low = model.lower_side();
  NLModel up = low.conjugate();
  const Partition& p = low.partition();
  Assessment la = low.to_assessment();

  Verdict direct = is_precise_probability(la);

  // Coherent-case characterisation: either one atom carries everything, or
  // the intercepts coincide (a = c < 0) with exactly two essential atoms.
  bool coherent = hbm_is_coherent_fast(low).holds;
  bool case_one_atom = false;
  for (int t = 0; t < p.size() && !case_one_atom; ++t) {
    if (low.evaluate(p.atom(t)) != Rational(1) || up.evaluate(p.atom(t)) != Rational(1))
      continue;
    bool others_null = true;
    for (int s = 0; s < p.size(); ++s) {
      if (s == t) continue;
      if (low.evaluate(p.atom(s)) != Rational(0) || up.evaluate(p.atom(s)) != Rational(0))
        others_null = false;
    }
    case_one_atom = others_null;
  }
  bool case_two_essential = false;
  const Rational a = low.params().a;
  if (a == low.params().c() && a.sign() < 0) {
    int essential_atoms = 0;
    for (int t = 0; t < p.size(); ++t) {
      Rational v = low.evaluate(p.atom(t));
      if (v > Rational(0) && v < Rational(1)) ++essential_atoms;
    }
    case_two_essential = essential_atoms == 2;
  }
  const bool route_cases = coherent && (case_one_atom || case_two_essential);

  // Inequality-pair characterisation on the lower side.
  const bool route_pair = is_subadditive(la).holds && is_quasi_superadditive(la).holds;

  if (route_cases != direct.holds || route_pair != direct.holds)
    throw std::logic_error("precision characterisations disagree");

  if (direct.holds)
    direct.detail = case_one_atom ? "precise probability concentrated on one atom"
                                  : "precise probability with two essential atoms";
  return direct;
}

}  // namespace nlum
