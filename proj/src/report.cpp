#include "lcde/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "lcde/system_file.hpp"

namespace lcde {
namespace {

using json = nlohmann::ordered_json;

// JSON has no literal for non-finite numbers, so those are carried as
// strings.  Finite values rely on the library's shortest round-trip
// formatting.
json real_to_json(double v) {
  if (std::isnan(v)) return json("nan");
  if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  return json(v);
}

double real_from_json(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string& s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("report field '" + field + "' is not a number");
}

json reals_to_json(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(real_to_json(v));
  return arr;
}

std::vector<double> reals_from_json(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError("report field '" + field + "' is not an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& item : v) out.push_back(real_from_json(item, field));
  return out;
}

json int_list_to_json(const std::vector<int>& values) {
  json arr = json::array();
  for (int v : values) arr.push_back(v);
  return arr;
}

std::vector<int> int_list_from_json(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError("report field '" + field + "' is not an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (!item.is_number_integer()) {
      throw ParseError("report field '" + field + "' holds a non-integer");
    }
    out.push_back(item.get<int>());
  }
  return out;
}

json edge_list_to_json(const std::vector<Edge>& edges) {
  json arr = json::array();
  for (const auto& [u, v] : edges) arr.push_back(json::array({u, v}));
  return arr;
}

std::vector<Edge> edge_list_from_json(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError("report field '" + field + "' is not an array");
  std::vector<Edge> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw ParseError("report field '" + field + "' holds a non-edge");
    }
    out.push_back({item[0].get<int>(), item[1].get<int>()});
  }
  return out;
}

json witness_to_json(const LinkingWitness& w) {
  json obj;
  obj["sensor"] = w.sensor;
  json paths = json::array();
  for (const auto& p : w.paths) paths.push_back(int_list_to_json(p));
  obj["paths"] = paths;
  json cycles = json::array();
  for (const auto& c : w.remainder_cycles) cycles.push_back(int_list_to_json(c));
  obj["remainder_cycles"] = cycles;
  return obj;
}

LinkingWitness witness_from_json(const json& v) {
  if (!v.is_object()) throw ParseError("linking witness is not an object");
  LinkingWitness w;
  w.sensor = v.at("sensor").get<int>();
  for (const auto& p : v.at("paths")) {
    w.paths.push_back(int_list_from_json(p, "paths"));
  }
  for (const auto& c : v.at("remainder_cycles")) {
    w.remainder_cycles.push_back(int_list_from_json(c, "remainder_cycles"));
  }
  return w;
}

json conditions_to_json(const std::vector<CheckCondition>& conditions) {
  json arr = json::array();
  for (const auto& c : conditions) {
    json obj;
    obj["name"] = c.name;
    obj["passed"] = c.passed;
    obj["detail"] = c.detail;
    arr.push_back(obj);
  }
  return arr;
}

std::vector<CheckCondition> conditions_from_json(const json& v) {
  if (!v.is_array()) throw ParseError("report field 'conditions' is not an array");
  std::vector<CheckCondition> out;
  for (const auto& item : v) {
    CheckCondition c;
    c.name = item.at("name").get<std::string>();
    c.passed = item.at("passed").get<bool>();
    c.detail = item.at("detail").get<std::string>();
    out.push_back(std::move(c));
  }
  return out;
}

json parse_root(const std::string& text, const std::string& command) {
  json root;
  try {
    root = json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("invalid report JSON: ") + err.what());
  }
  if (!root.is_object() || root.value("command", "") != command) {
    throw ParseError("not a '" + command + "' report");
  }
  return root;
}

std::string dump(const json& root) { return root.dump(2) + "\n"; }

// Field extraction uses json::at/get, which throw library exceptions on
// missing or mistyped fields; report those as ParseError like every other
// input problem.
template <class F>
auto guarded(F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& err) {
    throw ParseError(std::string("malformed report: ") + err.what());
  }
}

const char* yes_no(bool v) { return v ? "yes" : "no"; }
const char* pass_fail(bool v) { return v ? "PASS" : "FAIL"; }

std::string format_real(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::string format_int_set(const std::vector<int>& values) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << values[i];
  }
  out << "}";
  return out.str();
}

std::string format_path(const std::vector<int>& path) {
  std::ostringstream out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out << " -> ";
    out << path[i];
  }
  return out.str();
}

void describe_witness(std::ostringstream& out, const LinkingWitness& w,
                      const char* indent) {
  if (w.paths.empty()) {
    out << indent << "paths: none needed\n";
  }
  for (const auto& p : w.paths) {
    out << indent << "path: " << format_path(p) << "\n";
  }
  for (const auto& c : w.remainder_cycles) {
    out << indent << "cycle: " << format_path(c) << " -> " << c.front() << "\n";
  }
}

}  // namespace

std::string render_json(const CheckCommandReport& r) {
  json root;
  root["command"] = "check";
  root["file"] = r.file;
  root["passed"] = r.passed;
  root["plant_conditions"] = conditions_to_json(r.plant_conditions);
  root["strongly_connected"] = r.strongly_connected;
  json sensors = json::array();
  for (const auto& s : r.sensors) {
    json obj;
    obj["sensor"] = s.sensor;
    obj["mode"] = s.mode;
    obj["readable"] = int_list_to_json(s.readable);
    obj["passed"] = s.passed;
    obj["conditions"] = conditions_to_json(s.conditions);
    if (s.witness) obj["witness"] = witness_to_json(*s.witness);
    sensors.push_back(obj);
  }
  root["sensors"] = sensors;
  return dump(root);
}

CheckCommandReport parse_check_report(const std::string& text) {
  json root = parse_root(text, "check");
  return guarded([&] {
    CheckCommandReport r;
    r.file = root.at("file").get<std::string>();
    r.passed = root.at("passed").get<bool>();
    r.plant_conditions = conditions_from_json(root.at("plant_conditions"));
    r.strongly_connected = root.at("strongly_connected").get<bool>();
    for (const auto& item : root.at("sensors")) {
      SensorCheckEntry s;
      s.sensor = item.at("sensor").get<int>();
      s.mode = item.at("mode").get<std::string>();
      s.readable = int_list_from_json(item.at("readable"), "readable");
      s.passed = item.at("passed").get<bool>();
      s.conditions = conditions_from_json(item.at("conditions"));
      if (item.contains("witness")) s.witness = witness_from_json(item.at("witness"));
      r.sensors.push_back(std::move(s));
    }
    return r;
  });
}

std::string render_text(const CheckCommandReport& r) {
  std::ostringstream out;
  out << "check " << r.file << "\n";
  for (const auto& c : r.plant_conditions) {
    out << "plant " << c.name << ": " << (c.passed ? "ok" : "failed");
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  out << "communication graph strongly connected: " << yes_no(r.strongly_connected)
      << "\n";
  for (const auto& s : r.sensors) {
    out << "sensor " << s.sensor << " [" << s.mode << "] reads "
        << format_int_set(s.readable) << ": " << pass_fail(s.passed) << "\n";
    for (const auto& c : s.conditions) {
      out << "  " << c.name << ": " << (c.passed ? "ok" : "failed");
      if (!c.detail.empty()) out << " (" << c.detail << ")";
      out << "\n";
    }
    if (s.witness) describe_witness(out, *s.witness, "  ");
  }
  out << "verdict: " << pass_fail(r.passed) << "\n";
  return out.str();
}

std::string render_json(const DesignCommandReport& r) {
  json root;
  root["command"] = "design";
  root["file"] = r.file;
  root["method"] = r.method;
  root["feasible"] = r.feasible;
  root["optimal"] = r.optimal;
  root["total_cost"] = real_to_json(r.total_cost);
  root["edges"] = edge_list_to_json(r.edges);
  json certs = json::array();
  for (const auto& w : r.certificates) certs.push_back(witness_to_json(w));
  root["certificates"] = certs;
  if (!r.error.empty()) root["error"] = r.error;
  if (!r.out_file.empty()) root["out_file"] = r.out_file;
  return dump(root);
}

DesignCommandReport parse_design_report(const std::string& text) {
  json root = parse_root(text, "design");
  return guarded([&] {
    DesignCommandReport r;
    r.file = root.at("file").get<std::string>();
    r.method = root.at("method").get<std::string>();
    r.feasible = root.at("feasible").get<bool>();
    r.optimal = root.at("optimal").get<bool>();
    r.total_cost = real_from_json(root.at("total_cost"), "total_cost");
    r.edges = edge_list_from_json(root.at("edges"), "edges");
    for (const auto& w : root.at("certificates")) {
      r.certificates.push_back(witness_from_json(w));
    }
    if (root.contains("error")) r.error = root.at("error").get<std::string>();
    if (root.contains("out_file")) r.out_file = root.at("out_file").get<std::string>();
    return r;
  });
}

std::string render_text(const DesignCommandReport& r) {
  std::ostringstream out;
  out << "design " << r.file << " (" << r.method << ")\n";
  if (!r.feasible) {
    out << "infeasible: " << r.error << "\n";
    return out.str();
  }
  out << "total cost: " << format_real(r.total_cost)
      << (r.optimal ? " (proved minimal)" : " (upper bound)") << "\n";
  out << "edges:";
  for (const auto& [u, v] : r.edges) out << " " << u << "->" << v;
  out << "\n";
  for (const auto& w : r.certificates) {
    out << "sensor " << w.sensor << " certificate:\n";
    describe_witness(out, w, "  ");
  }
  if (!r.out_file.empty()) out << "wrote " << r.out_file << "\n";
  return out.str();
}

std::string render_json(const VerifyCommandReport& r) {
  json root;
  root["command"] = "verify";
  root["file"] = r.file;
  root["trials"] = r.trials;
  root["seed"] = r.seed;
  root["tolerance"] = real_to_json(r.tolerance);
  root["generic"] = r.generic;
  json sensors = json::array();
  for (const auto& s : r.sensors) {
    json obj;
    obj["sensor"] = s.sensor;
    obj["trials"] = s.trials;
    obj["full_rank_trials"] = s.full_rank_trials;
    obj["failure_condition_numbers"] = reals_to_json(s.failure_condition_numbers);
    sensors.push_back(obj);
  }
  root["sensors"] = sensors;
  return dump(root);
}

VerifyCommandReport parse_verify_report(const std::string& text) {
  json root = parse_root(text, "verify");
  return guarded([&] {
    VerifyCommandReport r;
    r.file = root.at("file").get<std::string>();
    r.trials = root.at("trials").get<int>();
    r.seed = root.at("seed").get<std::uint64_t>();
    r.tolerance = real_from_json(root.at("tolerance"), "tolerance");
    r.generic = root.at("generic").get<bool>();
    for (const auto& item : root.at("sensors")) {
      SensorTrialStats s;
      s.sensor = item.at("sensor").get<int>();
      s.trials = item.at("trials").get<int>();
      s.full_rank_trials = item.at("full_rank_trials").get<int>();
      s.failure_condition_numbers = reals_from_json(
          item.at("failure_condition_numbers"), "failure_condition_numbers");
      r.sensors.push_back(std::move(s));
    }
    return r;
  });
}

std::string render_text(const VerifyCommandReport& r) {
  std::ostringstream out;
  out << "verify " << r.file << " (" << r.trials << " trials, seed " << r.seed
      << ")\n";
  for (const auto& s : r.sensors) {
    out << "sensor " << s.sensor << ": " << s.full_rank_trials << "/" << s.trials
        << " full-rank trials";
    if (!s.failure_condition_numbers.empty()) {
      out << ", failures conditioned at";
      for (double v : s.failure_condition_numbers) out << " " << format_real(v);
    }
    out << "\n";
  }
  out << "generic observability: " << pass_fail(r.generic) << "\n";
  return out.str();
}

std::string render_json(const SimulateCommandReport& r) {
  json root;
  root["command"] = "simulate";
  root["file"] = r.file;
  root["seed"] = r.seed;
  root["steps"] = r.steps;
  json states = json::array();
  for (const auto& row : r.states) states.push_back(reals_to_json(row));
  root["states"] = states;
  json outputs = json::array();
  for (const auto& per_sensor : r.outputs) {
    json steps = json::array();
    for (const auto& sample : per_sensor) steps.push_back(reals_to_json(sample));
    outputs.push_back(steps);
  }
  root["outputs"] = outputs;
  return dump(root);
}

SimulateCommandReport parse_simulate_report(const std::string& text) {
  json root = parse_root(text, "simulate");
  return guarded([&] {
    SimulateCommandReport r;
    r.file = root.at("file").get<std::string>();
    r.seed = root.at("seed").get<std::uint64_t>();
    r.steps = root.at("steps").get<int>();
    for (const auto& row : root.at("states")) {
      r.states.push_back(reals_from_json(row, "states"));
    }
    for (const auto& per_sensor : root.at("outputs")) {
      std::vector<std::vector<double>> steps;
      for (const auto& sample : per_sensor) {
        steps.push_back(reals_from_json(sample, "outputs"));
      }
      r.outputs.push_back(std::move(steps));
    }
    return r;
  });
}

std::string render_text(const SimulateCommandReport& r) {
  std::ostringstream out;
  out << "simulate " << r.file << " (seed " << r.seed << ", steps " << r.steps
      << ")\n";
  for (std::size_t k = 0; k < r.states.size(); ++k) {
    out << "x~[" << k << "] =";
    for (double v : r.states[k]) out << " " << format_real(v);
    out << "\n";
  }
  for (std::size_t i = 0; i < r.outputs.size(); ++i) {
    out << "sensor " << (i + 1) << " outputs:\n";
    for (std::size_t k = 0; k < r.outputs[i].size(); ++k) {
      out << "  y[" << k << "] =";
      for (double v : r.outputs[i][k]) out << " " << format_real(v);
      out << "\n";
    }
  }
  return out.str();
}

std::string render_json(const EstimateCommandReport& r) {
  json root;
  root["command"] = "estimate";
  root["file"] = r.file;
  root["sensor"] = r.sensor;
  root["seed"] = r.seed;
  root["window"] = r.window;
  root["passed"] = r.passed;
  root["relative_error"] = real_to_json(r.relative_error);
  root["condition_number"] = real_to_json(r.condition_number);
  root["estimate"] = reals_to_json(r.estimate);
  root["true_initial"] = reals_to_json(r.true_initial);
  if (!r.error.empty()) root["error"] = r.error;
  return dump(root);
}

EstimateCommandReport parse_estimate_report(const std::string& text) {
  json root = parse_root(text, "estimate");
  return guarded([&] {
    EstimateCommandReport r;
    r.file = root.at("file").get<std::string>();
    r.sensor = root.at("sensor").get<int>();
    r.seed = root.at("seed").get<std::uint64_t>();
    r.window = root.at("window").get<int>();
    r.passed = root.at("passed").get<bool>();
    r.relative_error = real_from_json(root.at("relative_error"), "relative_error");
    r.condition_number =
        real_from_json(root.at("condition_number"), "condition_number");
    r.estimate = reals_from_json(root.at("estimate"), "estimate");
    r.true_initial = reals_from_json(root.at("true_initial"), "true_initial");
    if (root.contains("error")) r.error = root.at("error").get<std::string>();
    return r;
  });
}

std::string render_text(const EstimateCommandReport& r) {
  std::ostringstream out;
  out << "estimate " << r.file << " (sensor " << r.sensor << ", seed " << r.seed
      << ", window " << r.window << ")\n";
  if (!r.error.empty()) {
    out << "failed: " << r.error << "\n";
    return out.str();
  }
  out << "relative error: " << std::setprecision(3) << std::scientific
      << r.relative_error << std::defaultfloat << "\n";
  out << "condition number: " << format_real(r.condition_number) << "\n";
  out << "estimate:";
  for (double v : r.estimate) out << " " << format_real(v);
  out << "\n";
  out << "true initial:";
  for (double v : r.true_initial) out << " " << format_real(v);
  out << "\n";
  out << "verdict: " << pass_fail(r.passed) << "\n";
  return out.str();
}

}  // namespace lcde
