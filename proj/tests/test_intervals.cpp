#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlum/fuzz.hpp"
#include "nlum/intervals.hpp"

using namespace nlum;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

NLModel model3(std::vector<const char*> p0, const char* a, const char* b) {
  Partition p = Partition::with_default_labels(static_cast<int>(p0.size()));
  std::vector<Rational> w;
  for (const char* s : p0) w.push_back(R(s));
  return NLModel(p, BaseProbability(p, std::move(w)),
                 NLParams{R(a), R(b), Orientation::Lower});
}

ProbabilityInterval interval(std::vector<const char*> l, std::vector<const char*> u) {
  Partition p = Partition::with_default_labels(static_cast<int>(l.size()));
  std::vector<Rational> lo, hi;
  for (const char* s : l) lo.push_back(R(s));
  for (const char* s : u) hi.push_back(R(s));
  return ProbabilityInterval(p, std::move(lo), std::move(hi));
}

}  // namespace

TEST_CASE("reachability of atom bounds") {
  CHECK(is_reachable(interval({"0", "0", "0"}, {"1", "1", "1"})).holds);

  Verdict v = is_reachable(interval({"0.6", "0.6", "0"}, {"0.6", "0.6", "0"}));
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness);
  const auto* w = std::get_if<ReachabilityWitness>(&*v.witness);
  REQUIRE(w);
  CHECK(w->atom == 0);
  CHECK(w->upper_inequality);

  CHECK_THROWS_AS(interval({"0.5"}, {"0.4"}), std::invalid_argument);
  CHECK_THROWS_AS(interval({"-0.1"}, {"0.4"}), std::invalid_argument);
}

TEST_CASE("reachability agrees with lower coherence of the interval assignment") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    // Deterministic pseudo-random bounds with small denominators.
    std::uint64_t s = case_seed(2024, i);
    auto frac = [&s](int slot) {
      std::uint64_t x = s ^ (0x9E3779B97F4A7C15ull * (slot + 1));
      x ^= x >> 29;
      long den = 1 + static_cast<long>(x % 12);
      long num = static_cast<long>((x >> 17) % (den + 1));
      return Rational(num, den);
    };
    int n = 2 + static_cast<int>(i % 3);
    Partition p = Partition::with_default_labels(n);
    std::vector<Rational> lo, hi;
    for (int k = 0; k < n; ++k) {
      Rational x = frac(2 * k), y = frac(2 * k + 1);
      lo.push_back(min(x, y));
      hi.push_back(max(x, y));
    }
    ProbabilityInterval iv(p, lo, hi);
    CHECK(is_reachable(iv).holds ==
          is_coherent_lower_on(p, interval_assignment(iv)).holds);
  }
}

TEST_CASE("natural extension formulas on the vacuous interval") {
  ProbabilityInterval vac = interval({"0", "0", "0"}, {"1", "1", "1"});
  const Partition& p = vac.partition();
  auto [l, u] = natural_extension(vac, p.event(0b011));
  CHECK(l == Rational(0));
  CHECK(u == Rational(1));
  CHECK(natural_extension(vac, p.full_event()).first == Rational(1));
  CHECK(natural_extension(vac, p.empty_event()).second == Rational(0));
}

TEST_CASE("natural extension rejects unreachable intervals") {
  CHECK_THROWS_AS(
      natural_extension(interval({"0.6", "0.6", "0"}, {"0.6", "0.6", "0"}),
                        Partition::with_default_labels(3).atom(0)),
      std::invalid_argument);
}

TEST_CASE("pari-mutuel models equal the extension of their atom restriction") {
  // delta = 0.1 over the uniform base on three atoms, checked eventwise.
  NLModel pmm = model3({"1/3", "1/3", "1/3"}, "-0.1", "1.1");
  ProbabilityInterval restriction = atom_restriction(pmm);
  REQUIRE(is_reachable(restriction).holds);
  NLModel up = pmm.conjugate();
  for (const Event& e : pmm.partition().all_events()) {
    auto [l, u] = natural_extension(restriction, e);
    CHECK(l == pmm.evaluate(e));
    CHECK(u == up.evaluate(e));
  }
  CHECK(nl_equals_extended_interval(pmm).holds);
}

TEST_CASE("extension of the coherent skewed model reproduces all eight values") {
  NLModel m = model3({"1/2", "29/60", "1/60"}, "-4", "6");
  ProbabilityInterval restriction = atom_restriction(m);
  REQUIRE(is_reachable(restriction).holds);
  NLModel up = m.conjugate();
  for (const Event& e : m.partition().all_events()) {
    auto [l, u] = natural_extension(restriction, e);
    CHECK(l == m.evaluate(e));
    CHECK(u == up.evaluate(e));
  }
  CHECK(nl_equals_extended_interval(m).holds);
}

TEST_CASE("the lower extension is coherent, supermodular and conjugate-consistent") {
  ProbabilityInterval iv = interval({"0.1", "0.2", "0.1"}, {"0.5", "0.6", "0.4"});
  REQUIRE(is_reachable(iv).holds);
  Assessment low = natural_extension_lower(iv);
  CHECK(is_coherent(low).holds);
  CHECK(is_2monotone(low).holds);
  const Partition& p = iv.partition();
  for (const Event& e : p.all_events()) {
    auto [l, u] = natural_extension(iv, e);
    CHECK(u == Rational(1) - natural_extension(iv, e.complement()).first);
    CHECK(l == low.value(e));
  }
}

TEST_CASE("vertical-barrier closed form against brute force") {
  // Three atoms: always an extended interval.
  CHECK(nl_equals_extended_interval(model3({"0.2", "0.3", "0.5"}, "-0.1", "0.8")).holds);

  // Four atoms, uniform base: a two-atom event has extension 1/5 < 3/10.
  Partition p4 = Partition::with_default_labels(4);
  BaseProbability uniform(p4, std::vector<Rational>(4, Rational(1, 4)));
  NLModel vbm4(p4, uniform, NLParams{R("-0.1"), R("0.8"), Orientation::Lower});
  Verdict v = nl_equals_extended_interval(vbm4);
  CHECK_FALSE(v.holds);

  // Concentrated base keeps the equality at four atoms.
  BaseProbability point(p4, {Rational(1), Rational(0), Rational(0), Rational(0)});
  NLModel conc(p4, point, NLParams{R("-0.1"), R("0.8"), Orientation::Lower});
  CHECK(nl_equals_extended_interval(conc).holds);

  // The contamination special case holds at any size.
  NLModel eps(p4, uniform, NLParams{R("0"), R("0.8"), Orientation::Lower});
  CHECK(nl_equals_extended_interval(eps).holds);
}

TEST_CASE("restricted-range models extend exactly on binary partitions") {
  Partition p2 = Partition::with_default_labels(2);
  BaseProbability half(p2, {Rational(1, 2), Rational(1, 2)});
  NLModel rrm2(p2, half, NLParams{R("0.1"), R("0.5"), Orientation::Lower});
  CHECK(nl_equals_extended_interval(rrm2).holds);

  NLModel rrm3 = model3({"0.2", "0.3", "0.5"}, "0.1", "0.5");
  CHECK_FALSE(nl_equals_extended_interval(rrm3).holds);
}

TEST_CASE("sampled pari-mutuel and coherent horizontal-barrier models extend") {
  for (int atoms = 2; atoms <= 5; ++atoms) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      NLModel pmm = sample_model(Family::Pmm, atoms, case_seed(5150, i + 17 * atoms), 60);
      CHECK(nl_equals_extended_interval(pmm.lower_side()).holds);
    }
  }
  for (int atoms = 2; atoms <= 5; ++atoms) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      NLModel hbm =
          sample_model(Family::Hbm, atoms, case_seed(31337, i + 17 * atoms), 60)
              .lower_side();
      if (!hbm_is_coherent_fast(hbm).holds) continue;
      CHECK(nl_equals_extended_interval(hbm).holds);
    }
  }
}
