#include "nlum/intervals.hpp"

#include <sstream>
#include <stdexcept>

namespace nlum {

ProbabilityInterval::ProbabilityInterval(Partition partition, std::vector<Rational> lower,
                                         std::vector<Rational> upper)
    : partition_(std::move(partition)), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (static_cast<int>(lower_.size()) != partition_.size() ||
      static_cast<int>(upper_.size()) != partition_.size())
    throw std::invalid_argument("interval needs one bound pair per atom");
  for (int i = 0; i < partition_.size(); ++i) {
    if (lower_[i].sign() < 0 || upper_[i] > Rational(1) || lower_[i] > upper_[i])
      throw std::invalid_argument("atom bounds must satisfy 0 <= l <= u <= 1");
  }
}

Verdict is_reachable(const ProbabilityInterval& interval) {
  const int n = interval.partition().size();
  Rational sum_l(0), sum_u(0);
  for (int i = 0; i < n; ++i) {
    sum_l += interval.lower()[i];
    sum_u += interval.upper()[i];
  }
  for (int i = 0; i < n; ++i) {
    Rational upper_check = interval.upper()[i] + (sum_l - interval.lower()[i]);
    if (upper_check > Rational(1)) {
      std::ostringstream os;
      os << "u_" << i + 1 << " + sum of the other l_j = " << upper_check.str()
         << " exceeds 1";
      return {false, ReachabilityWitness{i, true}, os.str()};
    }
    Rational lower_check = interval.lower()[i] + (sum_u - interval.upper()[i]);
    if (lower_check < Rational(1)) {
      std::ostringstream os;
      os << "l_" << i + 1 << " + sum of the other u_j = " << lower_check.str()
         << " is below 1";
      return {false, ReachabilityWitness{i, false}, os.str()};
    }
  }
  return {true, std::nullopt, "atom bounds are reachable"};
}

Assignment interval_assignment(const ProbabilityInterval& interval) {
  const Partition& p = interval.partition();
  Assignment out;
  for (int i = 0; i < p.size(); ++i) out.emplace_back(p.atom(i), interval.lower()[i]);
  for (int i = 0; i < p.size(); ++i)
    out.emplace_back(p.atom(i).complement(), Rational(1) - interval.upper()[i]);
  return out;
}

std::pair<Rational, Rational> natural_extension(const ProbabilityInterval& interval,
                                                const Event& a) {
  Verdict reach = is_reachable(interval);
  if (!reach.holds)
    throw std::invalid_argument("natural extension needs a reachable interval: " +
                                reach.detail);
  const Partition& p = interval.partition();
  if (a.atom_count != p.size())
    throw std::invalid_argument("event not over the interval's partition");

  Rational in_l(0), in_u(0), out_l(0), out_u(0);
  for (int i = 0; i < p.size(); ++i) {
    if (a.contains_atom(i)) {
      in_l += interval.lower()[i];
      in_u += interval.upper()[i];
    } else {
      out_l += interval.lower()[i];
      out_u += interval.upper()[i];
    }
  }
  Rational l = max(in_l, Rational(1) - out_u);
  Rational u = min(in_u, Rational(1) - out_l);
  return {l, u};
}

Assessment natural_extension_lower(const ProbabilityInterval& interval) {
  const Partition& p = interval.partition();
  require_enumerable(p);
  std::vector<Rational> values;
  values.reserve(p.event_count());
  for (std::uint64_t m = 0; m < p.event_count(); ++m)
    values.push_back(natural_extension(interval, p.event(m)).first);
  return Assessment(p, std::move(values), Orientation::Lower);
}

ProbabilityInterval atom_restriction(const NLModel& model) {
  NLModel low = model.lower_side();
  NLModel up = low.conjugate();
  const Partition& p = low.partition();
  std::vector<Rational> l, u;
  for (int i = 0; i < p.size(); ++i) {
    l.push_back(low.evaluate(p.atom(i)));
    u.push_back(up.evaluate(p.atom(i)));
  }
  return ProbabilityInterval(p, std::move(l), std::move(u));
}

namespace {

// Vertical-barrier closed form: three atoms or fewer, base probability
// concentrated on one atom, or every event of positive lower value made of
// all atoms but one.
bool vbm_closed_form(const NLModel& low) {
  const Partition& p = low.partition();
  if (p.size() <= 3) return true;
  if (low.p0().concentrated()) return true;
  for (std::uint64_t m = 1; m + 1 < p.event_count(); ++m) {
    Event e = p.event(m);
    if (low.evaluate(e).sign() > 0 && e.cardinality() != p.size() - 1) return false;
  }
  return true;
}

}  // namespace

Verdict nl_equals_extended_interval(const NLModel& model) {
  NLModel low = model.lower_side();
  const Partition& p = low.partition();
  require_enumerable(p);

  Verdict verdict;
  NLModel up = low.conjugate();
  bool crossing = false;
  for (int i = 0; i < p.size() && !crossing; ++i)
    crossing = low.evaluate(p.atom(i)) > up.evaluate(p.atom(i));
  if (crossing) {
    verdict = {false, std::nullopt, "atom bounds cross; the restriction is no interval"};
  } else {
    ProbabilityInterval restriction = atom_restriction(low);
    Verdict reach = is_reachable(restriction);
    if (!reach.holds) {
      verdict = {false, reach.witness,
                 "atom restriction is not reachable: " + reach.detail};
    } else {
      verdict = {true, std::nullopt,
                 "couple equals the natural extension of its atom restriction"};
      for (std::uint64_t m = 0; m < p.event_count(); ++m) {
        Event e = p.event(m);
        Rational extended = natural_extension(restriction, e).first;
        Rational direct = low.evaluate(e);
        if (extended != direct) {
          std::ostringstream os;
          os << "extension gives " << extended.str() << " but the measure gives "
             << direct.str() << " at " << p.event_name(e);
          verdict = {false, EventListWitness{{e}}, os.str()};
          break;
        }
      }
    }
  }

  // Family closed forms are fast paths; they must match the brute-force
  // comparison above.
  switch (classify(low.params()).tag) {
    case ModelTag::Pmm:
    case ModelTag::EpsilonContamination:
    case ModelTag::BaseProbabilityItself:
    case ModelTag::Vacuous:
      if (!verdict.holds)
        throw std::logic_error("special-case models must equal their extended interval");
      break;
    case ModelTag::Vbm:
      if (vbm_closed_form(low) != verdict.holds)
        throw std::logic_error("vertical-barrier closed form disagrees with brute force");
      break;
    case ModelTag::Hbm:
      if (hbm_is_coherent_fast(low).holds && !verdict.holds)
        throw std::logic_error("coherent horizontal-barrier models must equal their "
                               "extended interval");
      break;
    case ModelTag::Rrm:
      if (verdict.holds != (p.size() == 2))
        throw std::logic_error("restricted-range models extend exactly on binary "
                               "partitions");
      break;
    default:
      break;
  }
  return verdict;
}

}  // namespace nlum
