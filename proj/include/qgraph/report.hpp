#pragma once

// Check lists shared by the verification routines and the CLI.

#include <json.hpp>

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace qgraph {

struct Check {
  std::string name;
  bool ok = false;
  std::string residual;  // "0" or a short description of what is left over
  bool informational = false;
  double seconds = 0.0;
};

struct Report {
  std::string command;
  int p = 0;
  int genus = 0;
  std::vector<Check> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  void add(std::string name, bool ok, std::string residual = "", bool informational = false, double seconds = 0.0) {
    if (residual.empty()) residual = ok ? "0" : "nonzero";
    checks.push_back({std::move(name), ok, std::move(residual), informational, seconds});
  }
  void add_info(std::string name, std::string value) { add(std::move(name), true, std::move(value), true); }
  void merge(const Report& o) {
    for (const auto& c : o.checks) checks.push_back(c);
    for (const auto& [k, v] : o.data.items()) data[k] = v;
  }

  bool passed() const {
    for (const auto& c : checks)
      if (!c.informational && !c.ok) return false;
    return true;
  }
  std::string status() const { return passed() ? "pass" : "fail"; }

  /// Timings are excluded unless asked for so that reports are byte-identical across runs.
  nlohmann::ordered_json to_json(bool with_timing = false) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["p"] = p;
    j["genus"] = genus;
    j["status"] = status();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["ok"] = c.ok;
      e["residual"] = c.residual;
      if (c.informational) e["informational"] = true;
      if (with_timing) e["seconds"] = c.seconds;
      arr.push_back(e);
    }
    j["checks"] = arr;
    if (!data.empty()) j["data"] = data;
    return j;
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace qgraph
