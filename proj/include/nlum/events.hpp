#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nlum {

class Partition;

/// Subset of the atoms of a finite partition, stored as a bitmask.
/// Carries the atom count so complement and mismatch checks work without
/// a back-pointer to the partition.
struct Event {
  std::uint64_t mask = 0;
  int atom_count = 0;

  bool empty() const { return mask == 0; }
  bool full() const { return mask == full_mask(); }
  int cardinality() const { return __builtin_popcountll(mask); }
  bool contains_atom(int i) const { return (mask >> i) & 1u; }

  std::uint64_t full_mask() const {
    return atom_count == 64 ? ~0ull : ((1ull << atom_count) - 1);
  }

  Event complement() const { return {full_mask() & ~mask, atom_count}; }
  Event unite(const Event& o) const;
  Event intersect(const Event& o) const;
  Event subtract(const Event& o) const;
  bool implies(const Event& o) const;  // subset test

  friend bool operator==(const Event& a, const Event& b) {
    return a.mask == b.mask && a.atom_count == b.atom_count;
  }
  friend bool operator<(const Event& a, const Event& b) { return a.mask < b.mask; }
};

/// Finite universe of n >= 1 distinct, non-impossible atoms. The event
/// algebra is the powerset of the atoms; atom order is canonical for all
/// serialization.
class Partition {
 public:
  static constexpr int kMaxAtoms = 62;

  explicit Partition(std::vector<std::string> labels);
  static Partition with_default_labels(int n);  // "w1", "w2", ...

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;  // -1 if absent

  Event empty_event() const { return {0, size()}; }
  Event full_event() const { return Event{0, size()}.complement(); }
  Event atom(int i) const;
  Event event(std::uint64_t mask) const;

  /// Number of events in the algebra (2^n). Callers enumerating the full
  /// algebra must respect enumeration_cap().
  std::uint64_t event_count() const { return 1ull << size(); }

  /// Events in canonical (mask) order.
  std::vector<Event> all_events() const;
  /// Paper-table order: singletons, pairs, ... by cardinality, then the
  /// empty and the full event last.
  std::vector<Event> display_order() const;

  std::string event_name(const Event& e) const;  // "w1|w3", "0", "Omega"

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
};

/// Largest atom count for which full-algebra enumeration is permitted
/// (default 8, overridable through the NLUM_MAX_ATOMS environment variable).
int enumeration_cap();

void require_same_partition(const Event& a, const Event& b);
void require_enumerable(const Partition& p);

}  // namespace nlum
