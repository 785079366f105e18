#include "nlum/assessment.hpp"

#include <stdexcept>

namespace nlum {

Assessment::Assessment(Partition partition, std::vector<Rational> values,
                       Orientation orientation)
    : partition_(std::move(partition)),
      values_(std::move(values)),
      orientation_(orientation) {
  require_enumerable(partition_);
  if (values_.size() != partition_.event_count())
    throw std::invalid_argument("assessment must cover all 2^n events");
}

const Rational& Assessment::value(const Event& e) const {
  if (e.atom_count != partition_.size())
    throw std::invalid_argument("event not over this assessment's partition");
  return values_[e.mask];
}

Assessment Assessment::conjugate() const {
  const std::uint64_t count = partition_.event_count();
  const std::uint64_t full = count - 1;
  std::vector<Rational> conj(count);
  for (std::uint64_t m = 0; m < count; ++m) conj[m] = Rational(1) - values_[full & ~m];
  return Assessment(partition_, std::move(conj), flipped(orientation_));
}

Rational Assessment::min_value() const {
  Rational out = values_[0];
  for (const auto& v : values_)
    if (v < out) out = v;
  return out;
}

}  // namespace nlum
