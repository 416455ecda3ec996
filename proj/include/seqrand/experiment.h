// Copyright 2026 The seqrand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sweep configurations, named presets and the CSV runner behind `seqrand run`.

#ifndef SEQRAND_EXPERIMENT_H_
#define SEQRAND_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqrand/circuit.h"
#include "seqrand/noise.h"
#include "seqrand/steering.h"

namespace seqrand {

inline constexpr int kCsvVersion = 1;

// Raised for malformed or inconsistent configurations. `where` is a JSON
// pointer ("/plan/rounds/1/y1/angle") or a byte offset for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what),
        where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// A number, a sweep variable, or a constant expression such as "3*pi/16".
struct Param {
  double value = 0.0;
  std::string var;

  double resolve(const std::map<std::string, double>& env) const;
};

// Parses "pi", "pi/4", "3*pi/16", "0.08", "1e-4". Throws on anything else.
double parse_constant(const std::string& s);

struct Axis {
  std::string name;
  std::vector<double> values;
  // Range axes regenerate their values under --dense.
  bool range = false;
  double from = 0.0, to = 0.0;
  int points = 0, dense_points = 0;
};

struct StateChoice {
  std::string label;
  StateFamily family = StateFamily::kPure;
  std::map<std::string, Param> params;
  bool strict = true;
};

struct RoundChoice {
  Basis basis0 = Basis::kZ;
  Param angle0;
  Basis basis1 = Basis::kX;
  Param angle1;
};

enum class CertMode { kSdp, kAnalytic, kBoth };

struct ShotConfig {
  bool enabled = false;
  Param n;  // <= 0 selects exact probabilities
  int seeds = 5;
  std::string bases = "XYZ";
  bool project = true;
};

struct ExperimentConfig {
  std::string name;
  std::string kind = "sweep";  // or "selftest-harness"
  std::vector<StateChoice> states;  // more than one forms the "state" axis
  std::vector<RoundChoice> rounds;
  std::vector<Param> y_star;
  CertMode mode = CertMode::kSdp;
  std::vector<Axis> axes;
  ShotConfig shots;
  bool causal = true;
  Normalization anchor = Normalization::kTrace;
  bool projective_last_round = true;
  ConicOptions solver;
  std::uint64_t seed = 1;
  int instances = 200;  // selftest-harness
  std::string output;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);
nlohmann::json preset_json(const std::string& name);
std::vector<std::string> preset_names();

// One sweep point with all axis values bound.
struct SweepPoint {
  int index = 0;
  int state = 0;  // index into ExperimentConfig::states
  std::map<std::string, double> env;
};

std::vector<SweepPoint> expand_grid(const ExperimentConfig& cfg, bool dense);

struct BoundPoint {
  GeneratedState state;
  MeasurementPlan plan;
  std::vector<int> y_star;
};

// Throws ConfigError when a bound value is out of range.
BoundPoint bind_point(const ExperimentConfig& cfg, const SweepPoint& p);

struct RowResult {
  SweepPoint point;
  bool ok = true;
  std::vector<double> steering_weights;
  std::vector<double> violations;
  double p_guess = 1.0;
  double h_min = 0.0;
  double h_min_lo = 0.0, h_min_hi = 0.0;  // shots: min / max over seeds
  double analytic_h_min = 0.0;
  double projection_distance = 0.0;  // shots: mean over seeds
  double deficit = 0.0;
  std::string status;
  int iterations = 0;
  double max_gap = 0.0;
  std::string message;
};

RowResult run_point(const ExperimentConfig& cfg, const SweepPoint& p);

// H_min from the product bound, taking the largest bound over Bob's
// histories of length n - 1 (histories of probability zero are skipped).
double analytic_h_min(const CMatrix& rho, const MeasurementPlan& plan,
                      const std::vector<int>& y_star);

struct RunSummary {
  int points = 0;
  int failed = 0;
};

// Evaluates every grid point on `threads` workers (0: hardware threads) and
// writes rows in grid order.
RunSummary run_experiment(const ExperimentConfig& cfg, bool dense, int threads,
                          std::ostream& os);

void write_csv_header(std::ostream& os, const ExperimentConfig& cfg);
void write_csv_row(std::ostream& os, const ExperimentConfig& cfg,
                   const RowResult& r);

// Mixes a base seed with indices into a per-task seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

}  // namespace seqrand

#endif  // SEQRAND_EXPERIMENT_H_
