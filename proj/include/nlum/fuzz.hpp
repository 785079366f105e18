#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlum/nl_model.hpp"

namespace nlum {

enum class Family { Vbm, Hbm, Rrm, Hurwicz, Pmm, All };

Family family_from_name(const std::string& name);
std::string family_name(Family f);

struct FuzzOptions {
  Family family = Family::All;
  int atoms = 3;
  std::uint64_t cases = 100;
  std::uint64_t seed = 1;
  int denominator_bound = 60;  // largest denominator drawn by the grid sampler
  int jobs = 0;                // 0 = one worker per hardware thread
};

struct CheckOutcome {
  std::string check;
  bool passed = true;
  std::string detail;
};

struct FuzzFailure {
  std::uint64_t case_seed = 0;
  std::string check;
  std::string model_json;
  std::string detail;
};

struct FuzzTally {
  std::uint64_t run = 0;
  std::uint64_t failed = 0;
};

struct FuzzReport {
  std::uint64_t cases_run = 0;
  std::string family;
  int atoms = 0;
  std::uint64_t seed = 0;
  std::map<std::string, FuzzTally> tallies;
  std::vector<FuzzFailure> failures;

  bool all_passed() const { return failures.empty(); }
  std::string to_json() const;
  std::string to_text() const;
};

/// Stable mixing of run seed and case index; the result regenerates the case
/// on its own (sample_model(family, atoms, case_seed(...), bound)).
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

/// Rejection sampling on a rational grid inside the family's parameter
/// region. Boundary parameter lines (equal gap, pari-mutuel line) are drawn
/// with elevated probability so the boundary results get real coverage.
NLModel sample_model(Family family, int atoms, std::uint64_t case_seed,
                     int denominator_bound);

/// Every proposition check applicable to the model's classified family.
/// Internal cross-check failures surface as failed outcomes, not exceptions.
std::vector<CheckOutcome> run_model_checks(const NLModel& model);

/// Deterministic given options (worker scheduling does not affect the
/// report): same seed, byte-identical report.
FuzzReport run_fuzz(const FuzzOptions& options);

}  // namespace nlum
