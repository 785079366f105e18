#pragma once

#include <vector>

#include "nlum/events.hpp"
#include "nlum/rational.hpp"

namespace nlum {

/// Precise probability on a finite partition, given by one non-negative
/// weight per atom, summing to exactly 1. Extended additively to events.
class BaseProbability {
 public:
  BaseProbability(Partition partition, std::vector<Rational> weights);

  const Partition& partition() const { return partition_; }
  const Rational& weight(int atom) const { return weights_[atom]; }
  const std::vector<Rational>& weights() const { return weights_; }

  Rational value(const Event& a) const;

  /// True when all mass sits on a single atom.
  bool concentrated() const;

 private:
  Partition partition_;
  std::vector<Rational> weights_;
};

}  // namespace nlum
