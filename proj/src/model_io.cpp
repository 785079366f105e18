#include "nlum/model_io.hpp"

#include <json.hpp>

namespace nlum {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("document", "not valid JSON");
  if (!doc.is_object()) throw ParseError("document", "top level must be an object");
  return doc;
}

std::vector<std::string> string_list(const json& doc, const std::string& field) {
  if (!doc.contains(field)) throw ParseError(field, "missing field '" + field + "'");
  const json& arr = doc.at(field);
  if (!arr.is_array()) throw ParseError(field, "field '" + field + "' must be an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string())
      throw ParseError(field + "[" + std::to_string(i) + "]",
                       "entries of '" + field + "' must be strings");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

Rational rational_field(const json& doc, const std::string& field) {
  if (!doc.contains(field)) throw ParseError(field, "missing field '" + field + "'");
  const json& v = doc.at(field);
  if (!v.is_string())
    throw ParseError(field, "field '" + field + "' must be a rational string");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(field, std::string("field '" + field + "': ") + e.what());
  }
}

std::vector<Rational> rational_list(const json& doc, const std::string& field) {
  std::vector<std::string> raw = string_list(doc, field);
  std::vector<Rational> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    try {
      out.push_back(Rational::parse(raw[i]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(field + "[" + std::to_string(i) + "]", e.what());
    }
  }
  return out;
}

json rational_strings(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

}  // namespace

NLModel parse_model_document(const std::string& json_text) {
  json doc = parse_json(json_text);

  std::vector<std::string> atoms = string_list(doc, "atoms");
  Partition partition = [&] {
    try {
      return Partition(atoms);
    } catch (const std::invalid_argument& e) {
      throw ParseError("atoms", e.what());
    }
  }();

  std::vector<Rational> weights = rational_list(doc, "p0");
  BaseProbability p0 = [&] {
    try {
      return BaseProbability(partition, weights);
    } catch (const std::invalid_argument& e) {
      throw ParseError("p0", e.what());
    }
  }();

  NLParams params;
  params.a = rational_field(doc, "a");
  params.b = rational_field(doc, "b");
  if (!doc.contains("orientation"))
    throw ParseError("orientation", "missing field 'orientation'");
  std::string orient = doc.at("orientation").is_string()
                           ? doc.at("orientation").get<std::string>()
                           : std::string();
  if (orient == "lower")
    params.orientation = Orientation::Lower;
  else if (orient == "upper")
    params.orientation = Orientation::Upper;
  else
    throw ParseError("orientation", "field 'orientation' must be \"lower\" or \"upper\"");

  try {
    return NLModel(partition, p0, params);
  } catch (const std::invalid_argument& e) {
    throw ParseError("b", e.what());
  }
}

std::string serialize_model(const NLModel& model) {
  json doc;
  doc["atoms"] = model.partition().labels();
  doc["p0"] = rational_strings(model.p0().weights());
  doc["a"] = model.params().a.str();
  doc["b"] = model.params().b.str();
  doc["orientation"] = model.orientation() == Orientation::Lower ? "lower" : "upper";
  return doc.dump();
}

ProbabilityInterval parse_interval_document(const std::string& json_text) {
  json doc = parse_json(json_text);
  std::vector<std::string> atoms = string_list(doc, "atoms");
  Partition partition = [&] {
    try {
      return Partition(atoms);
    } catch (const std::invalid_argument& e) {
      throw ParseError("atoms", e.what());
    }
  }();
  std::vector<Rational> l = rational_list(doc, "l");
  std::vector<Rational> u = rational_list(doc, "u");
  try {
    return ProbabilityInterval(partition, l, u);
  } catch (const std::invalid_argument& e) {
    throw ParseError("l", e.what());
  }
}

std::string serialize_interval(const ProbabilityInterval& interval) {
  json doc;
  doc["atoms"] = interval.partition().labels();
  doc["l"] = rational_strings(interval.lower());
  doc["u"] = rational_strings(interval.upper());
  return doc.dump();
}

}  // namespace nlum
