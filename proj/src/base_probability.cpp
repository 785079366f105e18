#include "nlum/base_probability.hpp"

#include <stdexcept>

namespace nlum {

BaseProbability::BaseProbability(Partition partition, std::vector<Rational> weights)
    : partition_(std::move(partition)), weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != partition_.size())
    throw std::invalid_argument("base probability needs one weight per atom");
  Rational total(0);
  for (const auto& w : weights_) {
    if (w.sign() < 0) throw std::invalid_argument("negative base probability weight");
    total += w;
  }
  if (total != Rational(1))
    throw std::invalid_argument("base probability weights sum to " + total.str() +
                                ", expected 1");
}

Rational BaseProbability::value(const Event& a) const {
  if (a.atom_count != partition_.size())
    throw std::invalid_argument("event not over this base probability's partition");
  Rational out(0);
  for (int i = 0; i < partition_.size(); ++i)
    if (a.contains_atom(i)) out += weights_[i];
  return out;
}

bool BaseProbability::concentrated() const {
  for (const auto& w : weights_)
    if (w == Rational(1)) return true;
  return false;
}

}  // namespace nlum
