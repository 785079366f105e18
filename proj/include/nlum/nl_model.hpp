#pragma once

#include <string>
#include <vector>

#include "nlum/assessment.hpp"
#include "nlum/base_probability.hpp"
#include "nlum/events.hpp"
#include "nlum/rational.hpp"

namespace nlum {

/// Parameters of a nearly-linear measure mu(A) = clamp(b*P0(A) + a, 0, 1)
/// on non-trivial events, with boundary values fixed at 0 and 1. The
/// conjugate parameter is c = 1 - (a + b), recomputed on demand.
struct NLParams {
  Rational a;
  Rational b;
  Orientation orientation = Orientation::Lower;

  Rational c() const { return Rational(1) - (a + b); }
  /// Parameters of the lower side of the conjugate couple.
  NLParams lower_side() const {
    return orientation == Orientation::Lower ? *this
                                             : NLParams{c(), b, Orientation::Lower};
  }
  NLParams conjugate() const { return {c(), b, flipped(orientation)}; }
};

enum class ModelTag {
  Pmm,
  EpsilonContamination,
  Vacuous,
  BaseProbabilityItself,
  Vbm,
  Hbm,
  Rrm,
  DegenerateHurwicz,
  NotNL,
};

std::string tag_name(ModelTag tag);

/// Taxonomy verdict. Special cases take precedence over their containing
/// families (a pari-mutuel model is reported as Pmm, not Vbm or Hbm); the
/// boundary flags let callers still treat the model as a member of the wider
/// family. Upper-oriented parameters are classified through the conjugate
/// lower side.
struct ModelClass {
  ModelTag tag = ModelTag::NotNL;
  bool b_plus_2a_eq_1 = false;
  bool a_plus_b_eq_1 = false;
};

ModelClass classify(const NLParams& params);

/// Partition of the event algebra by measure value: null (mu = 0),
/// universal (mu = 1) and essential (strictly in between) events.
struct EventSets {
  std::vector<Event> null_events;
  std::vector<Event> universal_events;
  std::vector<Event> essential_events;

  bool is_null(const Event& e) const;
  bool is_universal(const Event& e) const;
  bool is_essential(const Event& e) const;
};

class NLModel {
 public:
  /// Requires b > 0, or b = 0 with a in [0,1] (the degenerate constant model).
  NLModel(Partition partition, BaseProbability p0, NLParams params);

  const Partition& partition() const { return partition_; }
  const BaseProbability& p0() const { return p0_; }
  const NLParams& params() const { return params_; }
  Orientation orientation() const { return params_.orientation; }

  Rational evaluate(const Event& a) const;

  NLModel conjugate() const;
  /// The lower / upper side of the conjugate couple this measure belongs to.
  NLModel lower_side() const;
  NLModel upper_side() const;

  ModelClass model_class() const { return classify(params_); }

  /// Null / universal / essential events, computed by the threshold formulas
  /// on P0 and cross-checked against direct evaluation.
  EventSets event_sets() const;

  Assessment to_assessment() const;

 private:
  Partition partition_;
  BaseProbability p0_;
  NLParams params_;
};

struct ImprecisionResult {
  Rational gap;          // upper(A) - lower(A)
  bool constant_region;  // A essential for both sides, where the gap is 1-(b+2a)
};

/// Pointwise imprecision of the couple at one event, measured on the lower
/// side's parametrisation.
ImprecisionResult imprecision(const NLModel& lower, const Event& a);

}  // namespace nlum
