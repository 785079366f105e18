// Command-line surface for nearly-linear imprecise-probability models:
// classification, consistency checks, assessment tables, interval extension
// and the proposition fuzzing harness.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nlum/consistency.hpp"
#include "nlum/fuzz.hpp"
#include "nlum/intervals.hpp"
#include "nlum/model_io.hpp"

namespace {

using nlohmann::json;
using namespace nlum;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json witness_json(const Partition& p, const Witness& w) {
  json out;
  if (const auto* events = std::get_if<EventListWitness>(&w)) {
    json arr = json::array();
    for (const auto& e : events->events) arr.push_back(p.event_name(e));
    out["events"] = arr;
  } else if (const auto* prob = std::get_if<ProbabilityWitness>(&w)) {
    json arr = json::array();
    for (const auto& v : prob->atom_weights) arr.push_back(v.str());
    out["probability"] = arr;
  } else if (const auto* stakes = std::get_if<StakeWitness>(&w)) {
    json arr = json::array();
    for (const auto& t : stakes->stakes)
      arr.push_back({{"event", p.event_name(t.event)}, {"stake", t.stake.str()}});
    out["stakes"] = arr;
    if (stakes->opposite)
      out["opposite"] = {{"event", p.event_name(stakes->opposite->event)},
                         {"stake", stakes->opposite->stake.str()}};
  } else if (const auto* reach = std::get_if<ReachabilityWitness>(&w)) {
    out["atom"] = p.label(reach->atom);
    out["inequality"] = reach->upper_inequality ? "u_i + sum l_j <= 1" : "l_i + sum u_j >= 1";
  }
  return out;
}

json verdict_json(const Partition& p, const Verdict& v) {
  json out;
  out["holds"] = v.holds;
  out["detail"] = v.detail;
  if (v.witness) out["witness"] = witness_json(p, *v.witness);
  return out;
}

Event parse_event_arg(const Partition& p, const std::string& spec) {
  if (spec.empty() || spec == "0" || spec == "empty") return p.empty_event();
  if (spec == "Omega" || spec == "omega" || spec == "full") return p.full_event();
  Event e = p.empty_event();
  std::stringstream ss(spec);
  std::string label;
  while (std::getline(ss, label, ',')) {
    int idx = p.index_of(label);
    if (idx < 0) throw std::runtime_error("unknown atom label: " + label);
    e = e.unite(p.atom(idx));
  }
  return e;
}

int cmd_classify(const std::string& path, bool as_json) {
  NLModel model = parse_model_document(slurp(path));
  ModelClass mc = model.model_class();
  NLParams low = model.params().lower_side();
  Rational b2a = low.b + low.a + low.a;

  EventSets sets = model.event_sets();
  if (as_json) {
    json out;
    out["tag"] = tag_name(mc.tag);
    out["orientation"] = model.orientation() == Orientation::Lower ? "lower" : "upper";
    out["a"] = model.params().a.str();
    out["b"] = model.params().b.str();
    out["c"] = model.params().c().str();
    out["b_plus_2a"] = b2a.str();
    out["b_plus_2a_eq_1"] = mc.b_plus_2a_eq_1;
    out["a_plus_b_eq_1"] = mc.a_plus_b_eq_1;
    out["null_count"] = sets.null_events.size();
    out["universal_count"] = sets.universal_events.size();
    out["essential_count"] = sets.essential_events.size();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << tag_name(mc.tag) << ", c=" << model.params().c().str()
              << ", b+2a=" << b2a.str() << "\n";
    std::cout << "boundary flags: b+2a=1 " << (mc.b_plus_2a_eq_1 ? "yes" : "no")
              << ", a+b=1 " << (mc.a_plus_b_eq_1 ? "yes" : "no") << "\n";
    std::cout << "events: null=" << sets.null_events.size()
              << " universal=" << sets.universal_events.size()
              << " essential=" << sets.essential_events.size() << "\n";
  }
  return kExitHolds;
}

Verdict run_notion(const NLModel& model, const std::string& notion) {
  Assessment a = model.to_assessment();
  if (notion == "capacity") return is_capacity(a);
  if (notion == "2coherence") return is_2coherent(a);
  if (notion == "asl") return avoids_sure_loss(a);
  if (notion == "coherence") {
    Verdict env = is_coherent(a);
    ModelTag tag = model.model_class().tag;
    if (tag == ModelTag::Hbm || tag == ModelTag::Pmm) {
      Verdict fast = hbm_is_coherent_fast(model);
      if (fast.holds != env.holds)
        throw std::logic_error("family characterisation disagrees with the envelope");
      if (!env.holds) return fast;  // the violating pair is the sharper witness
    }
    return env;
  }
  if (notion == "2monotone") return is_2monotone(a);
  if (notion == "2alternating") return is_2alternating(a);
  if (notion == "subadditive") return is_subadditive(a);
  if (notion == "superadditive") return is_superadditive(a);
  if (notion == "quasi-superadditive") return is_quasi_superadditive(a);
  if (notion == "convex") return is_convex(a);
  if (notion == "c-convex") return is_c_convex(a);
  if (notion == "precise") return is_precise_probability(a);
  throw CLI::ValidationError("--notion", "unknown notion: " + notion);
}

int cmd_check(const std::string& path, const std::string& notion) {
  NLModel model = parse_model_document(slurp(path));
  Verdict v = run_notion(model, notion);
  json out = verdict_json(model.partition(), v);
  out["notion"] = notion;
  std::cout << out.dump(2) << "\n";
  return v.holds ? kExitHolds : kExitFails;
}

int cmd_table(const std::string& path, const std::string& format, bool approx,
              bool plot_data) {
  NLModel model = parse_model_document(slurp(path));
  NLModel low = model.lower_side();
  NLModel up = low.conjugate();
  const Partition& p = model.partition();
  std::vector<Event> order = p.display_order();

  if (plot_data) {
    // Decimal (approximate) coordinates for external plotting.
    std::vector<Event> sorted = order;
    std::sort(sorted.begin(), sorted.end(), [&](const Event& x, const Event& y) {
      return low.p0().value(x) < low.p0().value(y);
    });
    std::cout << "p0,lower,upper\n";
    for (const Event& e : sorted)
      std::cout << low.p0().value(e).approx() << "," << low.evaluate(e).approx() << ","
                << up.evaluate(e).approx() << "\n";
    return kExitHolds;
  }

  if (format == "json") {
    json out;
    json events = json::array(), p0 = json::array(), lower = json::array(),
         upper = json::array();
    for (const Event& e : order) {
      events.push_back(p.event_name(e));
      p0.push_back(low.p0().value(e).str());
      lower.push_back(low.evaluate(e).str());
      upper.push_back(up.evaluate(e).str());
    }
    out["events"] = events;
    out["p0"] = p0;
    out["lower"] = lower;
    out["upper"] = upper;
    std::cout << out.dump(2) << "\n";
    return kExitHolds;
  }

  auto emit_row = [&](const std::string& name, auto value_of) {
    std::cout << name;
    for (const Event& e : order) {
      std::cout << "," << value_of(e).str();
      if (approx) std::cout << "," << value_of(e).approx();
    }
    std::cout << "\n";
  };
  std::cout << "measure";
  for (const Event& e : order) {
    std::cout << "," << p.event_name(e);
    if (approx) std::cout << "," << p.event_name(e) << " (approx)";
  }
  std::cout << "\n";
  emit_row("P0", [&](const Event& e) { return low.p0().value(e); });
  emit_row("lower", [&](const Event& e) { return low.evaluate(e); });
  emit_row("upper", [&](const Event& e) { return up.evaluate(e); });
  return kExitHolds;
}

int cmd_extend_interval(const std::string& path, const std::string& event_spec,
                        bool as_json) {
  ProbabilityInterval interval = parse_interval_document(slurp(path));
  const Partition& p = interval.partition();

  Verdict reach = is_reachable(interval);
  if (!reach.holds) {
    if (as_json) {
      json out = verdict_json(p, reach);
      out["reachable"] = false;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "unreachable interval: " << reach.detail << "\n";
    }
    return kExitFails;
  }

  std::vector<Event> order;
  if (!event_spec.empty()) {
    order.push_back(parse_event_arg(p, event_spec));
  } else {
    order = p.display_order();
  }

  if (as_json) {
    json arr = json::array();
    for (const Event& e : order) {
      auto [l, u] = natural_extension(interval, e);
      arr.push_back({{"event", p.event_name(e)}, {"l", l.str()}, {"u", u.str()}});
    }
    std::cout << json{{"extension", arr}}.dump(2) << "\n";
  } else {
    std::cout << "event,l,u\n";
    for (const Event& e : order) {
      auto [l, u] = natural_extension(interval, e);
      std::cout << p.event_name(e) << "," << l.str() << "," << u.str() << "\n";
    }
  }
  return kExitHolds;
}

int cmd_fuzz(const FuzzOptions& options, bool as_json, std::uint64_t replay_seed,
             bool has_replay) {
  if (has_replay) {
    NLModel model = sample_model(options.family, options.atoms, replay_seed,
                                 options.denominator_bound);
    std::vector<CheckOutcome> outcomes = run_model_checks(model);
    json out;
    out["case_seed"] = replay_seed;
    out["model"] = json::parse(serialize_model(model));
    json checks = json::array();
    bool all = true;
    for (const auto& o : outcomes) {
      checks.push_back({{"check", o.check}, {"passed", o.passed}, {"detail", o.detail}});
      all = all && o.passed;
    }
    out["checks"] = checks;
    std::cout << out.dump(2) << "\n";
    return all ? kExitHolds : kExitFails;
  }

  FuzzReport report = run_fuzz(options);
  std::cout << (as_json ? report.to_json() : report.to_text());
  if (as_json) std::cout << "\n";
  return report.all_passed() ? kExitHolds : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearly-linear imprecise-probability models: classification, "
               "consistency verification and interval extension"};
  app.require_subcommand(1);

  std::string model_path, interval_path, notion, format = "csv", event_spec, family = "all";
  bool as_json = false, approx = false, plot_data = false;
  FuzzOptions fuzz_options;
  std::uint64_t replay_seed = 0;

  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a model document");
  classify_cmd->add_option("file", model_path, "model JSON document")->required();
  classify_cmd->add_flag("--json", as_json, "JSON output");

  CLI::App* check_cmd = app.add_subcommand("check", "Check one consistency notion");
  check_cmd->add_option("file", model_path, "model JSON document")->required();
  check_cmd
      ->add_option("--notion", notion,
                   "capacity|2coherence|asl|coherence|2monotone|2alternating|"
                   "subadditive|superadditive|quasi-superadditive|convex|c-convex|precise")
      ->required();

  CLI::App* table_cmd = app.add_subcommand("table", "Dump the full assessment table");
  table_cmd->add_option("file", model_path, "model JSON document")->required();
  table_cmd->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  table_cmd->add_flag("--approx", approx, "add approximate decimal columns (CSV)");
  table_cmd->add_flag("--plot-data", plot_data,
                      "emit approximate (P0, lower, upper) rows for plotting");

  CLI::App* extend_cmd =
      app.add_subcommand("extend-interval", "Natural extension of a probability interval");
  extend_cmd->add_option("file", interval_path, "interval JSON document")->required();
  extend_cmd->add_option("--event", event_spec, "comma-separated atom labels");
  extend_cmd->add_flag("--json", as_json, "JSON output");

  CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "Run the proposition fuzzing harness");
  fuzz_cmd->add_option("--cases", fuzz_options.cases, "number of cases");
  fuzz_cmd->add_option("--atoms", fuzz_options.atoms, "atoms per partition")
      ->check(CLI::Range(1, 8));
  fuzz_cmd->add_option("--seed", fuzz_options.seed, "run seed");
  fuzz_cmd->add_option("--family", family, "vbm|hbm|rrm|hurwicz|pmm|all");
  fuzz_cmd->add_option("--jobs", fuzz_options.jobs, "worker threads (0 = auto)");
  fuzz_cmd->add_option("--denominator-bound", fuzz_options.denominator_bound,
                       "largest denominator drawn by the sampler");
  CLI::Option* replay_opt =
      fuzz_cmd->add_option("--replay", replay_seed, "re-run one case by its case seed");
  fuzz_cmd->add_flag("--json", as_json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitError : kExitHolds;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(model_path, as_json);
    if (check_cmd->parsed()) return cmd_check(model_path, notion);
    if (table_cmd->parsed()) return cmd_table(model_path, format, approx, plot_data);
    if (extend_cmd->parsed()) return cmd_extend_interval(interval_path, event_spec, as_json);
    if (fuzz_cmd->parsed()) {
      fuzz_options.family = family_from_name(family);
      return cmd_fuzz(fuzz_options, as_json, replay_seed, replay_opt->count() > 0);
    }
  } catch (const ParseError& e) {
    std::cerr << "error in field '" << e.field() << "': " << e.what() << "\n";
    return kExitError;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
