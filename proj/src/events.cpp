#include "nlum/events.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace nlum {

Event Event::unite(const Event& o) const {
  require_same_partition(*this, o);
  return {mask | o.mask, atom_count};
}

Event Event::intersect(const Event& o) const {
  require_same_partition(*this, o);
  return {mask & o.mask, atom_count};
}

Event Event::subtract(const Event& o) const {
  require_same_partition(*this, o);
  return {mask & ~o.mask, atom_count};
}

bool Event::implies(const Event& o) const {
  require_same_partition(*this, o);
  return (mask & ~o.mask) == 0;
}

Partition::Partition(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("partition needs at least one atom");
  if (static_cast<int>(labels_.size()) > kMaxAtoms)
    throw std::invalid_argument("partition exceeds the " + std::to_string(kMaxAtoms) +
                                "-atom cap");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("empty atom label");
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate atom label: " + l);
  }
}

Partition Partition::with_default_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 1; i <= n; ++i) labels.push_back("w" + std::to_string(i));
  return Partition(std::move(labels));
}

int Partition::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

Event Partition::atom(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("atom index out of range");
  return {1ull << i, size()};
}

Event Partition::event(std::uint64_t mask) const {
  if (mask > full_event().mask) throw std::out_of_range("event mask out of range");
  return {mask, size()};
}

std::vector<Event> Partition::all_events() const {
  require_enumerable(*this);
  std::vector<Event> out;
  out.reserve(event_count());
  for (std::uint64_t m = 0; m < event_count(); ++m) out.push_back({m, size()});
  return out;
}

std::vector<Event> Partition::display_order() const {
  std::vector<Event> out = all_events();
  std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) {
    return std::pair(a.cardinality(), a.mask) < std::pair(b.cardinality(), b.mask);
  });
  // Move the empty event to the back, just before the full event.
  std::rotate(out.begin(), out.begin() + 1, out.end() - 1);
  return out;
}

std::string Partition::event_name(const Event& e) const {
  if (e.empty()) return "0";
  if (e.full()) return "Omega";
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (!e.contains_atom(i)) continue;
    if (!out.empty()) out += "|";
    out += labels_[i];
  }
  return out;
}

int enumeration_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("NLUM_MAX_ATOMS")) {
      int v = std::atoi(env);
      if (v >= 1 && v <= Partition::kMaxAtoms) return v;
    }
    return 8;
  }();
  return cap;
}

void require_same_partition(const Event& a, const Event& b) {
  if (a.atom_count != b.atom_count)
    throw std::invalid_argument("events come from different partitions");
}

void require_enumerable(const Partition& p) {
  if (p.size() > enumeration_cap())
    throw std::invalid_argument("partition has " + std::to_string(p.size()) +
                                " atoms, above the enumeration cap of " +
                                std::to_string(enumeration_cap()));
}

}  // namespace nlum
