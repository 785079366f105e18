#pragma once

#include <stdexcept>
#include <string>

#include "nlum/intervals.hpp"
#include "nlum/nl_model.hpp"

namespace nlum {

/// Parse failure carrying the offending document field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Model documents:
//   {"atoms": [...], "p0": [...], "a": "...", "b": "...",
//    "orientation": "lower"|"upper"}
// Interval documents:
//   {"atoms": [...], "l": [...], "u": [...]}
// All numbers are rational strings ("p/q" or finite decimals).

NLModel parse_model_document(const std::string& json_text);
std::string serialize_model(const NLModel& model);

ProbabilityInterval parse_interval_document(const std::string& json_text);
std::string serialize_interval(const ProbabilityInterval& interval);

}  // namespace nlum
