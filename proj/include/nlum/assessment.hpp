#pragma once

#include <vector>

#include "nlum/base_probability.hpp"
#include "nlum/events.hpp"
#include "nlum/rational.hpp"

namespace nlum {

enum class Orientation { Lower, Upper };

inline Orientation flipped(Orientation o) {
  return o == Orientation::Lower ? Orientation::Upper : Orientation::Lower;
}

/// Explicit set function on the full event algebra of a finite partition:
/// one rational value per event, indexed by event mask. Values are not
/// assumed to lie in [0,1] - consistency checkers must cope with arbitrary
/// rationals.
class Assessment {
 public:
  Assessment(Partition partition, std::vector<Rational> values, Orientation orientation);

  const Partition& partition() const { return partition_; }
  Orientation orientation() const { return orientation_; }
  const std::vector<Rational>& values() const { return values_; }

  const Rational& value(const Event& e) const;
  const Rational& value(std::uint64_t mask) const { return values_[mask]; }

  /// Conjugate set function A -> 1 - v(~A), with flipped orientation.
  Assessment conjugate() const;

  Rational min_value() const;

  friend bool operator==(const Assessment& a, const Assessment& b) {
    return a.partition_ == b.partition_ && a.values_ == b.values_ &&
           a.orientation_ == b.orientation_;
  }

 private:
  Partition partition_;
  std::vector<Rational> values_;
  Orientation orientation_;
};

}  // namespace nlum
