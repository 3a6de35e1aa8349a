#pragma once

// Check reporting: every verified identity produces one CheckReport with a
// stable id, the identity it states, the measured residual and the tolerance
// it was held to. pass is derived, never set by hand.

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace isinglab {

using json = nlohmann::json;

struct CheckReport {
  std::string id;        // stable machine key, e.g. "algebra.isometry_minus"
  std::string identity;  // the statement checked, e.g. "D'D = (1+P)/2"
  json params;           // evaluation point: N, omega, couplings, ...
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_ms = 0.0;
};

inline CheckReport make_check(std::string id, std::string identity,
                              json params, double residual, double tolerance,
                              double wall_ms = 0.0) {
  CheckReport r;
  r.id = std::move(id);
  r.identity = std::move(identity);
  r.params = std::move(params);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  r.wall_ms = wall_ms;
  return r;
}

inline json to_json(const CheckReport& r) {
  return json{{"id", r.id},           {"identity", r.identity},
              {"params", r.params},   {"residual", r.residual},
              {"tolerance", r.tolerance}, {"pass", r.pass},
              {"wall_ms", r.wall_ms}};
}

inline bool all_pass(const std::vector<CheckReport>& v) {
  for (const auto& r : v) {
    if (!r.pass) return false;
  }
  return true;
}

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    const auto dt = std::chrono::steady_clock::now() - t0_;
    return std::chrono::duration<double, std::milli>(dt).count();
  }
  void reset() { t0_ = std::chrono::steady_clock::now(); }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace isinglab
