#include "nlum/fuzz.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nlum/consistency.hpp"
#include "nlum/intervals.hpp"
#include "nlum/model_io.hpp"

namespace nlum {

namespace {

// Self-contained splitmix-style generator; std distributions are avoided so
// reports replay bit-identically regardless of the standard library.
struct Rng {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n); modulo bias is irrelevant at these ranges.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool one_in(int n) { return below(n) == 0; }
};

BaseProbability sample_p0(Rng& rng, const Partition& p, int den_bound) {
  const int n = p.size();
  if (rng.one_in(16)) {  // concentrated on one atom
    std::vector<Rational> w(n, Rational(0));
    w[rng.below(n)] = Rational(1);
    return BaseProbability(p, std::move(w));
  }
  long q = rng.range(1, std::max(den_bound, 1));
  std::vector<long> cuts;
  cuts.reserve(n + 1);
  cuts.push_back(0);
  cuts.push_back(q);
  for (int i = 0; i < n - 1; ++i) cuts.push_back(rng.range(0, q));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> w;
  w.reserve(n);
  for (int i = 0; i < n; ++i) w.push_back(Rational(cuts[i + 1] - cuts[i], q));
  return BaseProbability(p, std::move(w));
}

NLParams sample_params(Rng& rng, Family family, int den_bound_in) {
  NLParams params;
  params.orientation = Orientation::Lower;
  const long den_bound = std::max(den_bound_in, 4);
  const Rational one(1);
  switch (family) {
    case Family::Pmm: {
      long d = rng.range(1, den_bound);
      Rational delta(rng.range(1, 3 * d), d);
      params.a = -delta;
      params.b = one + delta;
      break;
    }
    case Family::Vbm: {
      // a in [-2, 0], a + b in [0, 1]; the pari-mutuel and vacuous edges
      // come out of the closed ranges, b = 0 is rejected.
      while (true) {
        long d1 = rng.range(1, den_bound);
        params.a = Rational(-rng.range(0, 2 * d1), d1);
        long d2 = rng.range(1, den_bound);
        Rational sum = rng.one_in(8) ? Rational(rng.one_in(2) ? 1 : 0)
                                     : Rational(rng.range(0, d2), d2);
        params.b = sum - params.a;
        if (params.b.sign() > 0) break;
      }
      break;
    }
    case Family::Hbm: {
      // a < 0, b in (1 - a, 1 - 2a]; with elevated probability the boundary
      // line b + 2a = 1 is drawn exactly.
      long d1 = rng.range(1, den_bound);
      params.a = Rational(-rng.range(1, 6 * d1), d1);
      if (rng.one_in(8)) {
        params.b = one - params.a - params.a;
      } else {
        long d2 = rng.range(1, den_bound);
        // t in (0, -a]: b = 1 - a + t
        Rational minus_a = -params.a;
        long hi = static_cast<long>(mpz_class(minus_a.raw().get_num() * d2 /
                                              minus_a.raw().get_den())
                                        .get_si());
        Rational t = hi >= 1 ? Rational(rng.range(1, hi), d2) : minus_a;
        if (t > minus_a) t = minus_a;
        params.b = one - params.a + t;
      }
      break;
    }
    case Family::Rrm: {
      // a in (0, 1/2), b in (0, 1 - 2a].
      long d1 = rng.range(3, den_bound);
      long half = (d1 - 1) / 2;
      params.a = Rational(rng.range(1, std::max(1l, half)), d1);
      Rational room = one - params.a - params.a;
      if (rng.one_in(8)) {
        params.b = room;
      } else {
        long d2 = rng.range(1, den_bound);
        long hi = static_cast<long>(
            mpz_class(room.raw().get_num() * d2 / room.raw().get_den()).get_si());
        params.b = hi >= 1 ? Rational(rng.range(1, hi), d2) : room;
      }
      break;
    }
    case Family::Hurwicz: {
      long d = rng.range(2, den_bound);
      params.a = Rational(rng.range(0, d / 2), d);
      params.b = Rational(0);
      break;
    }
    case Family::All:
      throw std::logic_error("sample_params needs a concrete family");
  }
  return params;
}

struct SideBySide {
  Assessment lower;
  Assessment upper;
};

using Adder = std::function<void(const std::string&, bool, std::string)>;

bool subset_of(const std::vector<Event>& inner, const EventSets& sets, bool universal) {
  for (const Event& e : inner) {
    bool in = universal ? sets.is_universal(e) : sets.is_null(e);
    if (!in) return false;
  }
  return true;
}

}  // namespace

Family family_from_name(const std::string& name) {
  if (name == "vbm") return Family::Vbm;
  if (name == "hbm") return Family::Hbm;
  if (name == "rrm") return Family::Rrm;
  if (name == "hurwicz") return Family::Hurwicz;
  if (name == "pmm") return Family::Pmm;
  if (name == "all") return Family::All;
  throw std::invalid_argument("unknown family: " + name);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Vbm: return "vbm";
    case Family::Hbm: return "hbm";
    case Family::Rrm: return "rrm";
    case Family::Hurwicz: return "hurwicz";
    case Family::Pmm: return "pmm";
    case Family::All: return "all";
  }
  return "all";
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  Rng rng{seed ^ (0xA24BAED4963EE407ull + index * 0x9E3779B97F4A7C15ull)};
  rng.next();
  return rng.next();
}

NLModel sample_model(Family family, int atoms, std::uint64_t case_seed,
                     int denominator_bound) {
  Rng rng{case_seed};
  rng.next();
  Family concrete = family;
  if (family == Family::All) {
    constexpr Family kAll[] = {Family::Vbm, Family::Hbm, Family::Rrm, Family::Hurwicz,
                               Family::Pmm};
    concrete = kAll[rng.below(5)];
  }
  Partition partition = Partition::with_default_labels(atoms);
  BaseProbability p0 = sample_p0(rng, partition, denominator_bound);
  NLParams params = sample_params(rng, concrete, denominator_bound);
  if (rng.one_in(2)) params = params.conjugate();  // exercise the upper rows
  return NLModel(partition, p0, params);
}

namespace {

void common_checks(const NLModel& low, const SideBySide& sides, const Adder& add) {
  const Partition& p = low.partition();
  const NLParams& params = low.params();
  const Rational gap = Rational(1) - (params.b + params.a + params.a);

  {
    Verdict vl = is_capacity(sides.lower);
    Verdict vu = is_capacity(sides.upper);
    add("capacity", vl.holds && vu.holds, vl.holds ? vu.detail : vl.detail);
  }
  {
    NLModel twice = low.conjugate().conjugate();
    bool ok = twice.params().a == params.a && twice.params().b == params.b &&
              twice.orientation() == low.orientation();
    add("conjugate-involution", ok, "");
  }
  {
    bool ok = true;
    for (std::uint64_t m = 0; m < p.event_count() && ok; ++m) {
      Event e = p.event(m);
      ok = sides.upper.value(e) == Rational(1) - sides.lower.value(e.complement());
    }
    add("conjugacy-pointwise", ok, "");
  }
  {
    EventSets sets = low.event_sets();
    bool ok = sets.null_events.size() + sets.universal_events.size() +
                  sets.essential_events.size() ==
              p.event_count();
    ok = ok && sets.is_null(p.empty_event()) && sets.is_universal(p.full_event());
    add("event-sets-partition", ok, "");
  }
  if (gap.sign() >= 0) {  // b + 2a <= 1
    Verdict vl = is_2coherent(sides.lower);
    Verdict vu = is_2coherent(sides.upper);
    add("two-coherent-when-gap-bounded", vl.holds && vu.holds,
        vl.holds ? vu.detail : vl.detail);
  }
  if (gap.sign() == 0) {
    bool ok = sides.lower.values() == sides.upper.values();
    add("equal-sides-when-gap-zero", ok, "");
  } else {
    bool equal = sides.lower.values() == sides.upper.values();
    if (equal) {
      bool zero_one = true;
      for (const auto& v : sides.lower.values())
        zero_one = zero_one && (v == Rational(0) || v == Rational(1));
      add("zero-one-valued-when-sides-equal", zero_one, "");
    }
  }
  {
    bool ok = true;
    std::string detail;
    EventSets lsets = low.event_sets();
    EventSets usets = low.conjugate().event_sets();
    for (std::uint64_t m = 0; m < p.event_count() && ok; ++m) {
      Event e = p.event(m);
      try {
        ImprecisionResult imp = imprecision(low, e);
        bool essential_both = lsets.is_essential(e) && usets.is_essential(e);
        ok = imp.constant_region == essential_both &&
             (!imp.constant_region || imp.gap == gap);
      } catch (const std::exception& ex) {
        ok = false;
        detail = ex.what();
      }
    }
    add("constant-imprecision-on-essential", ok, detail);
  }
  {
    // coherent => centered convex => no sure loss; coherent => 2-coherent.
    std::string detail;
    bool ok = true;
    try {
      bool coh = is_coherent(sides.lower).holds;
      bool cc = is_c_convex(sides.lower).holds;
      bool asl = avoids_sure_loss(sides.lower).holds;
      bool two = is_2coherent(sides.lower).holds;
      ok = (!coh || cc) && (!cc || asl) && (!coh || two);
      if (!ok) detail = "chain broken";
    } catch (const std::exception& ex) {
      ok = false;
      detail = ex.what();
    }
    add("consistency-chain", ok, detail);
  }
}

void vbm_checks(const NLModel& low, const SideBySide& sides, const Adder& add) {
  const Partition& p = low.partition();
  Verdict coh_l = is_coherent(sides.lower);
  add("vbm-lower-coherent", coh_l.holds, coh_l.detail);
  Verdict coh_u = is_coherent(sides.upper);
  add("vbm-upper-coherent", coh_u.holds, coh_u.detail);
  Verdict mono2 = is_2monotone(sides.lower);
  add("vbm-lower-supermodular", mono2.holds, mono2.detail);
  Verdict alt2 = is_2alternating(sides.upper);
  add("vbm-upper-submodular", alt2.holds, alt2.detail);
  {
    bool ok = true;
    for (std::uint64_t m = 0; m < p.event_count() && ok; ++m) {
      Event e = p.event(m);
      Rational base = low.p0().value(e);
      ok = sides.lower.value(e) <= base && base <= sides.upper.value(e);
    }
    add("vbm-brackets-base", ok, "");
  }
  {
    EventSets sets = low.event_sets();
    Verdict filt = is_filter(p, sets.universal_events);
    add("universal-set-filter", filt.holds, filt.detail);
    bool ok = true;
    for (const Event& e : sets.universal_events)
      ok = ok && sets.is_null(e.complement());
    add("universal-implies-null-complement", ok, "");
  }
  {
    std::string detail;
    bool ok = true;
    try {
      nl_equals_extended_interval(low);
    } catch (const std::exception& ex) {
      ok = false;
      detail = ex.what();
    }
    add("extended-interval-closed-form", ok, detail);
  }
}

void hbm_checks(const NLModel& low, const SideBySide& sides, bool strict_hbm,
                const Adder& add) {
  const Partition& p = low.partition();
  Verdict super = is_superadditive(sides.lower);
  add("hbm-lower-superadditive", super.holds, super.detail);
  {
    bool ok = true;
    const std::uint64_t full = p.event_count() - 1;
    for (std::uint64_t i = 0; i <= full && ok; ++i) {
      for (std::uint64_t j = i; j <= full && ok; ++j) {
        if ((i | j) != full) continue;
        ok = sides.upper.value(i) + sides.upper.value(j) >=
             Rational(1) + sides.upper.value(i & j);
      }
    }
    add("hbm-upper-overlap-bound", ok, "");
  }
  {
    EventSets lsets = low.event_sets();
    std::vector<Event> p0_null, p0_universal;
    for (std::uint64_t m = 0; m < p.event_count(); ++m) {
      Event e = p.event(m);
      Rational base = low.p0().value(e);
      if (base.sign() == 0 && !e.full()) p0_null.push_back(e);
      if (base == Rational(1) && !e.empty()) p0_universal.push_back(e);
    }
    // The empty/full events belong to the base sets and the measure sets alike.
    bool ok = subset_of(p0_null, lsets, false) && subset_of(p0_universal, lsets, true);
    add("hbm-inherits-extreme-sets", ok, "");
  }

  Verdict fast_up = is_subadditive(sides.upper);
  Verdict fast_low = is_quasi_superadditive(sides.lower);
  add("hbm-fast-coherence-sides-agree", fast_up.holds == fast_low.holds, "");
  const bool coherent = fast_up.holds;

  if (p.size() <= 4) {
    std::string detail;
    bool ok = true;
    try {
      bool env_u = is_coherent(sides.upper).holds;
      bool env_l = is_coherent(sides.lower).holds;
      ok = env_u == coherent && env_l == coherent;
      if (!ok) detail = "envelope and characterisation disagree";
    } catch (const std::exception& ex) {
      ok = false;
      detail = ex.what();
    }
    add("hbm-envelope-agrees-fast", ok, detail);
  }

  if (coherent) {
    Verdict alt2 = is_2alternating(sides.upper);
    Verdict mono2 = is_2monotone(sides.lower);
    add("hbm-coherent-submodular-upper", alt2.holds && mono2.holds,
        alt2.holds ? mono2.detail : alt2.detail);
    {
      EventSets lsets = low.event_sets();
      Verdict filt = is_filter(p, lsets.universal_events);
      bool un = true;
      for (const Event& e : lsets.universal_events)
        un = un && lsets.is_null(e.complement());
      add("hbm-coherent-universal-filter", filt.holds && un, filt.detail);
    }
  }

  if (strict_hbm) {
    if (coherent) {
      std::string detail;
      bool ok = true;
      try {
        HbmStructureReport report = hbm_structure(low);
        ok = report.decomposition_ok && report.partner_ok && report.slope_bound_holds &&
             report.value_count_ok;
        if (!ok) detail = "structure report has violations";
      } catch (const std::exception& ex) {
        ok = false;
        detail = ex.what();
      }
      add("hbm-coherent-structure", ok, detail);

      std::string idetail;
      bool iok = true;
      try {
        Verdict ext = nl_equals_extended_interval(low);
        iok = ext.holds;
        idetail = ext.detail;
      } catch (const std::exception& ex) {
        iok = false;
        idetail = ex.what();
      }
      add("hbm-coherent-extended-interval", iok, idetail);
    }
    {
      std::string detail;
      bool ok = true;
      try {
        hbm_precise_check(low);
      } catch (const std::exception& ex) {
        ok = false;
        detail = ex.what();
      }
      add("hbm-precision-routes-agree", ok, detail);
    }
  }
}

void rrm_checks(const NLModel& low, const SideBySide& sides, const Adder& add) {
  const Partition& p = low.partition();
  const NLParams& params = low.params();
  {
    bool ok_l = true, ok_u = true;
    Rational lo_l = params.a, hi_l = params.a + params.b;
    Rational lo_u = params.c(), hi_u = params.c() + params.b;
    for (std::uint64_t m = 1; m + 1 < p.event_count(); ++m) {
      ok_l = ok_l && sides.lower.value(m) >= lo_l && sides.lower.value(m) <= hi_l;
      ok_u = ok_u && sides.upper.value(m) >= lo_u && sides.upper.value(m) <= hi_u;
    }
    add("rrm-lower-range", ok_l, "");
    add("rrm-upper-range", ok_u, "");
  }
  {
    Verdict two = is_2coherent(sides.lower);
    add("rrm-two-coherent", two.holds, two.detail);
  }
  {
    std::string detail;
    bool ok = true;
    try {
      bool coh = is_coherent(sides.lower).holds;
      ok = coh == (p.size() == 2);
      if (!ok) detail = "coherence verdict off the binary rule";
    } catch (const std::exception& ex) {
      ok = false;
      detail = ex.what();
    }
    add("rrm-coherent-iff-binary", ok, detail);
  }
  {
    std::string detail;
    bool ok = true;
    try {
      Verdict ext = nl_equals_extended_interval(low);
      ok = ext.holds == (p.size() == 2);
    } catch (const std::exception& ex) {
      ok = false;
      detail = ex.what();
    }
    add("rrm-extended-interval-iff-binary", ok, detail);
  }
}

void hurwicz_checks(const NLModel& low, const SideBySide& sides, const Adder& add) {
  const Partition& p = low.partition();
  {
    Verdict two = is_2coherent(sides.lower);
    add("hurwicz-two-coherent", two.holds, two.detail);
  }
  {
    Assignment interior;
    for (std::uint64_t m = 1; m + 1 < p.event_count(); ++m)
      interior.emplace_back(p.event(m), sides.lower.value(m));
    Verdict conv = is_convex_lower_on(p, interior);
    add("hurwicz-convex-off-boundary", conv.holds, conv.detail);
  }
  {
    std::string detail;
    bool ok = true;
    try {
      bool cc = is_c_convex(sides.lower).holds;
      bool asl = avoids_sure_loss(sides.lower).holds;
      bool small = low.params().a * Rational(p.size()) <= Rational(1);
      ok = cc == asl && asl == small;
      if (!ok) detail = "centered convexity, sure loss and the 1/n bound disagree";
    } catch (const std::exception& ex) {
      ok = false;
      detail = ex.what();
    }
    add("hurwicz-c-convex-iff-sure-loss-iff-bound", ok, detail);
  }
}

}  // namespace

std::vector<CheckOutcome> run_model_checks(const NLModel& model) {
  std::vector<CheckOutcome> out;
  Adder add = [&out](const std::string& check, bool passed, std::string detail) {
    out.push_back({check, passed, std::move(detail)});
  };

  try {
    NLModel low = model.lower_side();
    SideBySide sides{low.to_assessment(), low.conjugate().to_assessment()};
    ModelTag tag = classify(low.params()).tag;

    common_checks(low, sides, add);

    const bool wide_vbm = tag == ModelTag::Vbm || tag == ModelTag::Pmm ||
                          tag == ModelTag::EpsilonContamination ||
                          tag == ModelTag::Vacuous ||
                          tag == ModelTag::BaseProbabilityItself;
    const bool wide_hbm = tag == ModelTag::Hbm || tag == ModelTag::Pmm;
    if (wide_vbm) vbm_checks(low, sides, add);
    if (wide_hbm) hbm_checks(low, sides, tag == ModelTag::Hbm, add);
    if (tag == ModelTag::Rrm) rrm_checks(low, sides, add);
    if (tag == ModelTag::DegenerateHurwicz) hurwicz_checks(low, sides, add);
    if (tag == ModelTag::NotNL)
      add("sampled-family-classifies", false, "sampler produced parameters outside "
                                              "every family");
  } catch (const std::exception& ex) {
    add("model-construction", false, ex.what());
  }
  return out;
}

FuzzReport run_fuzz(const FuzzOptions& options) {
  FuzzReport report;
  report.family = family_name(options.family);
  report.atoms = options.atoms;
  report.seed = options.seed;
  report.cases_run = options.cases;

  struct CaseResult {
    std::vector<CheckOutcome> outcomes;
    std::string model_json;
  };
  std::vector<CaseResult> results(options.cases);

  int jobs = options.jobs > 0 ? options.jobs
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  std::atomic<std::uint64_t> next_case{0};

  auto worker = [&] {
    while (true) {
      std::uint64_t i = next_case.fetch_add(1);
      if (i >= options.cases) break;
      std::uint64_t cs = case_seed(options.seed, i);
      NLModel model =
          sample_model(options.family, options.atoms, cs, options.denominator_bound);
      CaseResult& slot = results[i];
      slot.outcomes = run_model_checks(model);
      for (const auto& o : slot.outcomes) {
        if (!o.passed) {
          slot.model_json = serialize_model(model);
          break;
        }
      }
    }
  };

  if (jobs == 1 || options.cases <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::uint64_t i = 0; i < options.cases; ++i) {
    for (const auto& o : results[i].outcomes) {
      FuzzTally& tally = report.tallies[o.check];
      ++tally.run;
      if (!o.passed) {
        ++tally.failed;
        report.failures.push_back(
            {case_seed(options.seed, i), o.check, results[i].model_json, o.detail});
      }
    }
  }
  return report;
}

std::string FuzzReport::to_json() const {
  nlohmann::json doc;
  doc["cases_run"] = cases_run;
  doc["family"] = family;
  doc["atoms"] = atoms;
  doc["seed"] = seed;
  nlohmann::json tally = nlohmann::json::object();
  for (const auto& [check, t] : tallies)
    tally[check] = {{"run", t.run}, {"failed", t.failed}};
  doc["checks"] = tally;
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures)
    fails.push_back({{"case_seed", f.case_seed},
                     {"check", f.check},
                     {"model", f.model_json},
                     {"detail", f.detail}});
  doc["failures"] = fails;
  return doc.dump(2);
}

std::string FuzzReport::to_text() const {
  std::ostringstream os;
  os << "fuzz family=" << family << " atoms=" << atoms << " seed=" << seed
     << " cases=" << cases_run << "\n";
  for (const auto& [check, t] : tallies)
    os << "  " << check << ": " << t.run - t.failed << "/" << t.run << " ok"
       << (t.failed ? "  <-- FAILURES" : "") << "\n";
  os << (failures.empty() ? "all checks passed" : "FAILURES PRESENT") << "\n";
  return os.str();
}

}  // namespace nlum
