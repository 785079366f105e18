#include "nlum/nl_model.hpp"

#include <stdexcept>

namespace nlum {

std::string tag_name(ModelTag tag) {
  switch (tag) {
    case ModelTag::Pmm: return "PMM";
    case ModelTag::EpsilonContamination: return "EpsilonContamination";
    case ModelTag::Vacuous: return "Vacuous";
    case ModelTag::BaseProbabilityItself: return "BaseProbabilityItself";
    case ModelTag::Vbm: return "VBM";
    case ModelTag::Hbm: return "HBM";
    case ModelTag::Rrm: return "RRM";
    case ModelTag::DegenerateHurwicz: return "DegenerateHurwicz";
    case ModelTag::NotNL: return "NotNL";
  }
  return "NotNL";
}

ModelClass classify(const NLParams& params) {
  const Rational zero(0), one(1);
  NLParams low = params.lower_side();
  const Rational& a = low.a;
  const Rational& b = low.b;

  ModelClass out;
  out.b_plus_2a_eq_1 = b + a + a == one;
  out.a_plus_b_eq_1 = a + b == one;

  if (b < zero) {
    out.tag = ModelTag::NotNL;  // monotonicity fails for b < 0
  } else if (b == zero) {
    // Degenerate constant model; a outside [0,1] is not a capacity. Values
    // of a above 1/2 describe the upper side of the couple.
    out.tag = (a >= zero && a <= one) ? ModelTag::DegenerateHurwicz : ModelTag::NotNL;
  } else if (a + b == zero) {
    out.tag = ModelTag::Vacuous;
  } else if (a == zero && b == one) {
    out.tag = ModelTag::BaseProbabilityItself;
  } else if (a == zero && b < one) {
    out.tag = ModelTag::EpsilonContamination;
  } else if (a + b == one && a < zero) {
    out.tag = ModelTag::Pmm;
  } else if (a <= zero && a + b > zero && a + b < one) {
    out.tag = ModelTag::Vbm;
  } else if (a + b > one && b + a + a <= one) {
    out.tag = ModelTag::Hbm;
  } else if (a > zero && b + a + a <= one) {
    out.tag = ModelTag::Rrm;
  } else {
    out.tag = ModelTag::NotNL;
  }
  return out;
}

bool EventSets::is_null(const Event& e) const {
  for (const auto& x : null_events)
    if (x == e) return true;
  return false;
}

bool EventSets::is_universal(const Event& e) const {
  for (const auto& x : universal_events)
    if (x == e) return true;
  return false;
}

bool EventSets::is_essential(const Event& e) const {
  for (const auto& x : essential_events)
    if (x == e) return true;
  return false;
}

NLModel::NLModel(Partition partition, BaseProbability p0, NLParams params)
    : partition_(std::move(partition)), p0_(std::move(p0)), params_(std::move(params)) {
  if (!(p0_.partition() == partition_))
    throw std::invalid_argument("base probability built over a different partition");
  if (params_.b.sign() < 0)
    throw std::invalid_argument("negative slope is not a capacity");
  if (params_.b.sign() == 0 &&
      (params_.a < Rational(0) || params_.a > Rational(1)))
    throw std::invalid_argument("constant model needs a in [0,1]");
}

Rational NLModel::evaluate(const Event& a) const {
  if (a.atom_count != partition_.size())
    throw std::invalid_argument("event not over this model's partition");
  if (a.empty()) return Rational(0);
  if (a.full()) return Rational(1);
  Rational raw = params_.b * p0_.value(a) + params_.a;
  if (raw.sign() < 0) return Rational(0);
  if (raw > Rational(1)) return Rational(1);
  return raw;
}

NLModel NLModel::conjugate() const { return NLModel(partition_, p0_, params_.conjugate()); }

NLModel NLModel::lower_side() const {
  return orientation() == Orientation::Lower ? *this : conjugate();
}

NLModel NLModel::upper_side() const {
  return orientation() == Orientation::Upper ? *this : conjugate();
}

EventSets NLModel::event_sets() const {
  require_enumerable(partition_);
  EventSets out;
  const Rational zero(0), one(1);
  for (std::uint64_t m = 0; m < partition_.event_count(); ++m) {
    Event e = partition_.event(m);
    Rational v = evaluate(e);
    if (v == zero)
      out.null_events.push_back(e);
    else if (v == one)
      out.universal_events.push_back(e);
    else
      out.essential_events.push_back(e);

    // Threshold form of the same sets: P0(A) <= -a/b is null,
    // P0(A) >= (1-a)/b is universal. Only meaningful for b > 0.
    if (!e.empty() && !e.full() && params_.b.sign() > 0) {
      Rational p = p0_.value(e);
      bool null_by_threshold = p * params_.b <= -params_.a;
      bool universal_by_threshold = p * params_.b >= Rational(1) - params_.a;
      if (null_by_threshold != (v == zero) ||
          universal_by_threshold != (v == one))
        throw std::logic_error("threshold set disagrees with direct evaluation");
    }
  }
  return out;
}

Assessment NLModel::to_assessment() const {
  require_enumerable(partition_);
  std::vector<Rational> values;
  values.reserve(partition_.event_count());
  for (std::uint64_t m = 0; m < partition_.event_count(); ++m)
    values.push_back(evaluate(partition_.event(m)));
  return Assessment(partition_, std::move(values), orientation());
}

ImprecisionResult imprecision(const NLModel& lower, const Event& a) {
  NLModel low = lower.lower_side();
  NLModel up = low.conjugate();
  Rational lv = low.evaluate(a);
  Rational uv = up.evaluate(a);

  ImprecisionResult out;
  out.gap = uv - lv;
  const Rational zero(0), one(1);
  out.constant_region = lv > zero && lv < one && uv > zero && uv < one;
  if (out.constant_region) {
    Rational expected = one - (low.params().b + low.params().a + low.params().a);
    if (out.gap != expected)
      throw std::logic_error("imprecision gap is not constant on the essential region");
  }
  return out;
}

}  // namespace nlum
