#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlum/fuzz.hpp"
#include "nlum/nl_model.hpp"

using namespace nlum;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

NLModel model3(std::vector<const char*> p0, const char* a, const char* b,
               Orientation o = Orientation::Lower) {
  Partition p = Partition::with_default_labels(static_cast<int>(p0.size()));
  std::vector<Rational> w;
  for (const char* s : p0) w.push_back(R(s));
  return NLModel(p, BaseProbability(p, std::move(w)), NLParams{R(a), R(b), o});
}

}  // namespace

TEST_CASE("evaluation clamps the affine transform into [0,1]") {
  // Three atoms concentrated on the third one; intercept -0.15, slope 1.25.
  NLModel m = model3({"0.02", "0.02", "0.96"}, "-0.15", "1.25");
  const Partition& p = m.partition();
  CHECK(m.evaluate(p.atom(2)) == Rational(1));       // raw 1.05 clamps to 1
  CHECK(m.evaluate(p.atom(0)) == Rational(0));       // raw -0.125 clamps to 0
  CHECK(m.evaluate(p.event(0b011)) == Rational(0));  // raw -0.1
  CHECK(m.evaluate(p.event(0b101)) == Rational(1));  // raw 1.075
  CHECK(m.evaluate(p.empty_event()) == Rational(0));
  CHECK(m.evaluate(p.full_event()) == Rational(1));
}

TEST_CASE("evaluation on the equal-gap three-atom example") {
  NLModel m = model3({"0.3", "0.7", "0"}, "-0.125", "1.25");
  const Partition& p = m.partition();
  CHECK(m.evaluate(p.atom(0)) == Rational(1, 4));
  CHECK(m.evaluate(p.atom(1)) == Rational(3, 4));
  CHECK(m.evaluate(p.event(0b011)) == Rational(1));  // raw 1.125 clamps
  CHECK(m.evaluate(p.atom(2)) == Rational(0));
  CHECK(m.evaluate(p.event(0b101)) == Rational(1, 4));
  CHECK(m.evaluate(p.event(0b110)) == Rational(3, 4));
}

TEST_CASE("conjugation flips orientation and maps the intercept to 1-(a+b)") {
  NLModel pmm = model3({"0.5", "0.3", "0.2"}, "-0.1", "1.1");
  NLModel conj = pmm.conjugate();
  CHECK(conj.params().a == Rational(0));
  CHECK(conj.params().b == R("1.1"));
  CHECK(conj.orientation() == Orientation::Upper);

  NLModel hb = model3({"0.02", "0.02", "0.96"}, "-0.15", "1.25");
  CHECK(hb.params().c() == R("-0.10"));

  // Involution, pointwise conjugacy.
  NLModel twice = hb.conjugate().conjugate();
  CHECK(twice.params().a == hb.params().a);
  CHECK(twice.orientation() == hb.orientation());
  for (const Event& e : hb.partition().all_events())
    CHECK(hb.conjugate().evaluate(e) == Rational(1) - hb.evaluate(e.complement()));
}

TEST_CASE("classification of the worked parameter pairs") {
  auto tag = [](const char* a, const char* b, Orientation o = Orientation::Lower) {
    return classify(NLParams{R(a), R(b), o}).tag;
  };
  CHECK(tag("-0.1", "1.1") == ModelTag::Pmm);
  CHECK(tag("-0.15", "1.25") == ModelTag::Hbm);
  CHECK(tag("0.1", "0.5") == ModelTag::Rrm);
  CHECK(tag("-4", "8.5") == ModelTag::Hbm);
  CHECK(tag("-4", "6") == ModelTag::Hbm);
  CHECK(tag("-0.1", "0.8") == ModelTag::Vbm);
  CHECK(tag("0", "0.7") == ModelTag::EpsilonContamination);
  CHECK(tag("0", "1") == ModelTag::BaseProbabilityItself);
  CHECK(tag("-0.6", "0.6") == ModelTag::Vacuous);
  CHECK(tag("0.25", "0") == ModelTag::DegenerateHurwicz);
  CHECK(tag("0.7", "0") == ModelTag::DegenerateHurwicz);  // upper side of the couple
  CHECK(tag("1.2", "0") == ModelTag::NotNL);
  CHECK(tag("0.1", "1") == ModelTag::NotNL);  // b+2a > 1 with a > 0, a+b > 1
  CHECK(tag("0", "1.5") == ModelTag::NotNL);
  CHECK(tag("-0.1", "-1") == ModelTag::NotNL);
  CHECK(tag("-0.5", "0.2") == ModelTag::NotNL);  // a+b < 0

  // Upper orientation classifies through the conjugate lower side.
  CHECK(tag("0", "1.1", Orientation::Upper) == ModelTag::Pmm);
  CHECK(tag("-0.1", "1.25", Orientation::Upper) == ModelTag::Hbm);
}

TEST_CASE("classification boundary flags") {
  ModelClass hb = classify(NLParams{R("-0.15"), R("1.25"), Orientation::Lower});
  CHECK(hb.tag == ModelTag::Hbm);
  CHECK_FALSE(hb.b_plus_2a_eq_1);
  CHECK_FALSE(hb.a_plus_b_eq_1);

  ModelClass equal_gap = classify(NLParams{R("-0.125"), R("1.25"), Orientation::Lower});
  CHECK(equal_gap.b_plus_2a_eq_1);

  ModelClass pmm = classify(NLParams{R("-0.1"), R("1.1"), Orientation::Lower});
  CHECK(pmm.tag == ModelTag::Pmm);
  CHECK(pmm.a_plus_b_eq_1);

  // The flags are invariant under conjugation.
  ModelClass pmm_up =
      classify(NLParams{R("-0.1"), R("1.1"), Orientation::Lower}.conjugate());
  CHECK(pmm_up.tag == ModelTag::Pmm);
  CHECK(pmm_up.a_plus_b_eq_1);
}

TEST_CASE("null, universal and essential events by thresholds") {
  NLModel m = model3({"0.02", "0.02", "0.96"}, "-0.15", "1.25");
  const Partition& p = m.partition();
  EventSets sets = m.event_sets();
  CHECK(sets.universal_events.size() == 4);
  CHECK(sets.is_universal(p.atom(2)));
  CHECK(sets.is_universal(p.event(0b101)));
  CHECK(sets.is_universal(p.event(0b110)));
  CHECK(sets.is_universal(p.full_event()));
  CHECK(sets.essential_events.empty());
  CHECK(sets.null_events.size() == 4);

  // Vacuous model: everything but the full event is null.
  NLModel vac = model3({"0.5", "0.25", "0.25"}, "-0.6", "0.6");
  EventSets vsets = vac.event_sets();
  CHECK(vsets.null_events.size() == 7);
  CHECK(vsets.universal_events.size() == 1);

  // Contamination with strictly positive base: only the trivial events are
  // extreme.
  NLModel eps = model3({"0.5", "0.25", "0.25"}, "0", "0.7");
  EventSets esets = eps.event_sets();
  CHECK(esets.null_events.size() == 1);
  CHECK(esets.universal_events.size() == 1);
  CHECK(esets.essential_events.size() == 6);
}

TEST_CASE("imprecision is the constant 1-(b+2a) on doubly essential events") {
  NLModel pmm = model3({"0.5", "0.3", "0.2"}, "-0.1", "1.1");
  const Partition& p = pmm.partition();
  ImprecisionResult imp = imprecision(pmm, p.atom(0));  // P0 = 1/2
  CHECK(imp.constant_region);
  CHECK(imp.gap == Rational(1, 10));  // lower 0.45, upper 0.55

  NLModel equal_gap = model3({"0.3", "0.7", "0"}, "-0.125", "1.25");
  ImprecisionResult zero = imprecision(equal_gap, equal_gap.partition().atom(0));
  CHECK(zero.constant_region);
  CHECK(zero.gap == Rational(0));

  NLModel table2 = model3({"0.02", "0.02", "0.96"}, "-0.15", "1.25");
  ImprecisionResult off = imprecision(table2, table2.partition().atom(0));
  CHECK_FALSE(off.constant_region);
  CHECK(off.gap == Rational(0));  // both sides evaluate to 0
}

TEST_CASE("assessments enumerate the full algebra") {
  NLModel m = model3({"0.02", "0.02", "0.96"}, "-0.15", "1.25");
  Assessment a = m.to_assessment();
  const Partition& p = m.partition();
  REQUIRE(a.values().size() == 8);
  for (const Event& e : p.all_events()) CHECK(a.value(e) == m.evaluate(e));

  Partition p2 = Partition::with_default_labels(2);
  NLModel vac(p2, BaseProbability(p2, {Rational(1, 2), Rational(1, 2)}),
              NLParams{Rational(-1, 2), Rational(1, 2), Orientation::Lower});
  Assessment va = vac.to_assessment();
  CHECK(va.value(std::uint64_t{0}) == Rational(0));
  CHECK(va.value(std::uint64_t{1}) == Rational(0));
  CHECK(va.value(std::uint64_t{2}) == Rational(0));
  CHECK(va.value(std::uint64_t{3}) == Rational(1));
}

TEST_CASE("model construction validates parameters") {
  Partition p = Partition::with_default_labels(2);
  BaseProbability p0(p, {Rational(1, 2), Rational(1, 2)});
  CHECK_THROWS_AS(NLModel(p, p0, NLParams{Rational(0), Rational(-1), Orientation::Lower}),
                  std::invalid_argument);
  CHECK_THROWS_AS(NLModel(p, p0, NLParams{Rational(2), Rational(0), Orientation::Lower}),
                  std::invalid_argument);
  CHECK_NOTHROW(NLModel(p, p0, NLParams{Rational(1, 2), Rational(0), Orientation::Lower}));
}

TEST_CASE("monotonicity and conjugacy hold exhaustively on sampled models") {
  for (Family family :
       {Family::Vbm, Family::Hbm, Family::Rrm, Family::Hurwicz, Family::Pmm}) {
    for (int atoms = 2; atoms <= 5; ++atoms) {
      for (std::uint64_t i = 0; i < 8; ++i) {
        NLModel m = sample_model(family, atoms, case_seed(411, i * 31 + atoms), 60);
        NLModel low = m.lower_side();
        const Partition& p = low.partition();
        NLModel up = low.conjugate();
        for (const Event& a : p.all_events()) {
          CHECK(up.evaluate(a) == Rational(1) - low.evaluate(a.complement()));
          for (int t = 0; t < p.size(); ++t) {
            Event b = a.unite(p.atom(t));
            CHECK(low.evaluate(a) <= low.evaluate(b));
          }
        }
      }
    }
  }
}

TEST_CASE("equal gap parameter line makes both sides coincide") {
  // b + 2a = 1 forces lower == upper pointwise.
  NLModel m = model3({"0.3", "0.7", "0"}, "-0.125", "1.25");
  NLModel conj = m.conjugate();
  for (const Event& e : m.partition().all_events())
    CHECK(m.evaluate(e) == conj.evaluate(e));

  // Away from the line, coinciding sides force 0-1 values.
  NLModel zero_one = model3({"0.02", "0.02", "0.96"}, "-0.15", "1.25");
  NLModel zconj = zero_one.conjugate();
  bool all_equal = true;
  for (const Event& e : zero_one.partition().all_events())
    all_equal = all_equal && zero_one.evaluate(e) == zconj.evaluate(e);
  REQUIRE(all_equal);
  for (const Event& e : zero_one.partition().all_events()) {
    Rational v = zero_one.evaluate(e);
    CHECK((v == Rational(0) || v == Rational(1)));
  }
}
