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

#include "seqrand/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "seqrand/selftest.h"

namespace seqrand {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where, what);
}

void check_keys(const json& j, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail(where + "/" + k, "unknown key");
  }
}

const json& require(const json& j, const std::string& where,
                    const std::string& key) {
  if (!j.contains(key)) fail(where, "missing key '" + key + "'");
  return j.at(key);
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected true or false");
  return j.get<bool>();
}

long get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

double get_constant(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_constant(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected a number or constant expression");
}

Param get_param(const json& j, const std::string& where,
                const std::set<std::string>& vars) {
  Param p;
  if (j.is_string() && vars.count(j.get<std::string>())) {
    p.var = j.get<std::string>();
    return p;
  }
  p.value = get_constant(j, where);
  return p;
}

Basis get_basis(const json& j, const std::string& where) {
  try {
    return parse_basis(get_string(j, where));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

StateChoice parse_state(const json& j, const std::string& where,
                        const std::set<std::string>& vars) {
  check_keys(j, where, {"label", "family", "params", "strict"});
  StateChoice s;
  try {
    s.family = parse_family(get_string(require(j, where, "family"), where + "/family"));
  } catch (const std::invalid_argument& e) {
    fail(where + "/family", e.what());
  }
  s.label = j.contains("label") ? get_string(j["label"], where + "/label")
                                : family_name(s.family);
  if (j.contains("strict")) s.strict = get_bool(j["strict"], where + "/strict");
  if (j.contains("params")) {
    const json& ps = j["params"];
    if (!ps.is_object()) fail(where + "/params", "expected an object");
    for (const auto& [k, v] : ps.items()) {
      s.params[k] = get_param(v, where + "/params/" + k, vars);
    }
  }
  return s;
}

std::vector<double> linspace(double from, double to, int points) {
  std::vector<double> v;
  if (points == 1) return {from};
  for (int i = 0; i < points; ++i) {
    v.push_back(from + (to - from) * i / (points - 1));
  }
  return v;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fmt_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' ? ' ' : c);
  }
  return out + "\"";
}

bool usable(ConicStatus s) {
  return s == ConicStatus::kOptimal || s == ConicStatus::kOptimalInaccurate;
}

// Presets keep their definitions as config text so `--print-config` shows
// exactly what runs.
const std::map<std::string, std::string>& preset_table() {
  static const std::map<std::string, std::string> kPresets = {
      {"fig-one-round", R"({
  "name": "fig-one-round",
  "state": {"family": "pure", "params": {"zeta": "zeta1"}},
  "plan": {"rounds": [{"y0": {"basis": "Z", "angle": 0},
                       "y1": {"basis": "X", "angle": "theta1"}}],
           "y_star": [1]},
  "sweep": [{"name": "zeta1", "values": [0, "pi/32", "pi/16", "pi/8", "pi/4"]},
            {"name": "theta1", "from": 0, "to": "pi/4", "points": 33, "dense_points": 129}]
})"},
      {"fig-two-rounds", R"({
  "name": "fig-two-rounds",
  "state": {"family": "pure", "params": {"zeta": "zeta1"}},
  "plan": {"rounds": [{"y0": {"basis": "Z", "angle": 0},
                       "y1": {"basis": "X", "angle": "theta1"}},
                      {"y0": {"basis": "Z", "angle": 0},
                       "y1": {"basis": "X", "angle": 0}}],
           "y_star": [1, "y2"]},
  "sweep": [{"name": "y2", "values": [0, 1]},
            {"name": "zeta1", "values": ["pi/32", "pi/16", "pi/8", "pi/4"]},
            {"name": "theta1", "from": 0, "to": "pi/4", "points": 33, "dense_points": 129}]
})"},
      {"fig-three-rounds", R"({
  "name": "fig-three-rounds",
  "state": {"family": "pure", "params": {"zeta": "zeta1"}},
  "plan": {"rounds": [{"y0": {"basis": "Z", "angle": 0},
                       "y1": {"basis": "X", "angle": "theta1"}},
                      {"y0": {"basis": "Z", "angle": "phi2"},
                       "y1": {"basis": "X", "angle": 0}},
                      {"y0": {"basis": "Z", "angle": 0},
                       "y1": {"basis": "X", "angle": 0}}],
           "y_star": [1, 0, 1]},
  "sweep": [{"name": "phi2", "values": [0.08, 0.1, 0.2, 0.4, "pi/4"]},
            {"name": "zeta1", "values": ["pi/4", "pi/5", "pi/7", "pi/8", "pi/12"]},
            {"name": "theta1", "from": 0, "to": "pi/4", "points": 33, "dense_points": 129}]
})"},
  };
  return kPresets;
}

std::string family_preset(const std::string& name, const std::string& states,
                          int n, double phi2) {
  std::ostringstream os;
  os << R"({"name": ")" << name << R"(", "state": )" << states
     << R"(, "plan": {"rounds": [{"y0": {"basis": "Z", "angle": 0}, "y1": {"basis": "X", "angle": "theta1"}})";
  for (int i = 2; i <= n; ++i) {
    const double phi = i == 2 ? phi2 : 0.0;
    os << R"(, {"y0": {"basis": "Z", "angle": )" << phi
       << R"(}, "y1": {"basis": "X", "angle": 0}})";
  }
  os << R"(], "y_star": [)";
  for (int i = 1; i <= n; ++i) os << (i > 1 ? ", " : "") << (i % 2 == 1 ? 1 : 0);
  os << R"(]}, "sweep": [{"name": "theta1", "from": 0, "to": "pi/4", "points": 33, "dense_points": 129}]})";
  return os.str();
}

std::string ion_trap_states(int n) {
  std::string s = R"([
    {"label": "raw", "family": "depolarized", "params": {"eps": 0.15}},
    {"label": "purified-1", "family": "purified", "params": {"eps": 0.15, "rounds": 1}},
    {"label": "purified-2", "family": "purified", "params": {"eps": 0.15, "rounds": 2}},
    {"label": "purified-3", "family": "purified", "params": {"eps": 0.15, "rounds": 3}},
    {"label": "pure", "family": "depolarized", "params": {"eps": 0}})";
  if (n == 3) {
    for (const char* e : {"5e-3", "5e-4", "3e-4", "2e-4", "1e-4"}) {
      s += std::string(R"(,
    {"label": "raw-)") + e + R"(", "family": "depolarized", "params": {"eps": ")" +
           e + R"("}})";
    }
  }
  return s + "]";
}

constexpr const char* kAtomPhotonStates = R"([
    {"label": "eta-0.61", "family": "atom-photon", "params": {"eta": 0.61}},
    {"label": "eta-0.79", "family": "atom-photon", "params": {"eta": 0.79}},
    {"label": "eta-0.93", "family": "atom-photon", "params": {"eta": 0.93}},
    {"label": "eta-1", "family": "atom-photon", "params": {"eta": 1}}])";

constexpr const char* kNvStates = R"([
    {"label": "best", "family": "nv", "params": {"f_z": 0.9775, "v": 0.873}},
    {"label": "v-low", "family": "nv", "params": {"f_z": 0.9775, "v": 0.813}},
    {"label": "v-high", "family": "nv", "params": {"f_z": 0.9775, "v": 0.933}},
    {"label": "psi-minus", "family": "nv", "params": {"f_z": 1, "v": 1}}])";

std::string shots_preset(int n) {
  std::ostringstream os;
  os << R"({"name": "shots-)" << n
     << R"(", "state": {"family": "pure", "params": {"zeta": "pi/4"}},
  "plan": {"rounds": [{"y0": {"basis": "Z", "angle": 0}, "y1": {"basis": "X", "angle": "theta1"}})";
  for (int i = 2; i <= n; ++i) {
    os << R"(, {"y0": {"basis": "Z", "angle": )" << (i == 2 && n == 3 ? 0.08 : 0.0)
       << R"(}, "y1": {"basis": "X", "angle": 0}})";
  }
  os << R"(], "y_star": [)";
  for (int i = 1; i <= n; ++i) os << (i > 1 ? ", " : "") << (i % 2 == 1 ? 1 : 0);
  os << R"(]},
  "shots": {"n": "shots", "seeds": 5, "bases": "XYZ"},
  "sweep": [{"name": "shots", "values": [0, 100, 1000, 10000, 100000]},
            {"name": "theta1", "from": 0, "to": "pi/4", "points": 9, "dense_points": 33}]})";
  return os.str();
}

std::string preset_text(const std::string& name) {
  // "<family>-single" names the one-round preset.
  const std::string single = "-single";
  if (name.size() > single.size() && name.ends_with(single)) {
    return preset_text(name.substr(0, name.size() - single.size()) + "-1");
  }
  const auto& table = preset_table();
  if (auto it = table.find(name); it != table.end()) return it->second;
  for (int n = 1; n <= 3; ++n) {
    const std::string k = std::to_string(n);
    // Later rounds use phi2 = 0.08 in the three-round figures; the ion-trap
    // two-round figure keeps every later angle at 0.
    const double phi2 = n == 3 ? 0.08 : 0.0;
    if (name == "ion-trap-" + k) {
      return family_preset(name, ion_trap_states(n), n, phi2);
    }
    if (name == "atom-photon-" + k) {
      return family_preset(name, kAtomPhotonStates, n, n >= 2 ? 0.08 : 0.0);
    }
    if (name == "nv-" + k) {
      return family_preset(name, kNvStates, n, n >= 2 ? 0.08 : 0.0);
    }
    if (name == "shots-" + k) return shots_preset(n);
  }
  if (name == "selftest-harness") {
    return R"({"name": "selftest-harness", "kind": "selftest-harness", "instances": 200})";
  }
  throw ConfigError("", "unknown preset '" + name + "'");
}

}  // namespace

double parse_constant(const std::string& s) {
  std::string t;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.empty()) throw std::invalid_argument("empty constant");
  // Split on '*' and '/' keeping the operator; factors are numbers or "pi".
  double value = 1.0;
  char op = '*';
  size_t pos = 0;
  while (pos <= t.size()) {
    size_t next = t.find_first_of("*/", pos);
    if (next == pos) throw std::invalid_argument("bad constant '" + s + "'");
    const std::string tok = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    double f;
    if (tok == "pi") {
      f = std::numbers::pi;
    } else {
      size_t used = 0;
      try {
        f = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad constant '" + s + "'");
      }
      if (used != tok.size()) throw std::invalid_argument("bad constant '" + s + "'");
    }
    value = op == '*' ? value * f : value / f;
    if (next == std::string::npos) break;
    op = t[next];
    pos = next + 1;
  }
  if (!std::isfinite(value)) throw std::invalid_argument("constant '" + s + "' is not finite");
  return value;
}

double Param::resolve(const std::map<std::string, double>& env) const {
  if (var.empty()) return value;
  auto it = env.find(var);
  if (it == env.end()) throw ConfigError("", "unbound variable '" + var + "'");
  return it->second;
}

ExperimentConfig parse_config(const json& j) {
  check_keys(j, "", {"name", "kind", "state", "plan", "mode", "sweep", "shots",
                     "solver", "seed", "instances", "output"});
  ExperimentConfig cfg;
  if (j.contains("name")) cfg.name = get_string(j["name"], "/name");
  if (j.contains("kind")) {
    cfg.kind = get_string(j["kind"], "/kind");
    if (cfg.kind != "sweep" && cfg.kind != "selftest-harness") {
      fail("/kind", "must be 'sweep' or 'selftest-harness'");
    }
  }
  if (j.contains("seed")) {
    const long s = get_int(j["seed"], "/seed");
    if (s < 0) fail("/seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("output")) cfg.output = get_string(j["output"], "/output");
  if (cfg.kind == "selftest-harness") {
    if (j.contains("instances")) {
      cfg.instances = static_cast<int>(get_int(j["instances"], "/instances"));
      if (cfg.instances < 1) fail("/instances", "must be positive");
    }
    return cfg;
  }

  std::set<std::string> vars;
  if (j.contains("sweep")) {
    const json& sw = j["sweep"];
    if (!sw.is_array()) fail("/sweep", "expected an array of axes");
    for (size_t i = 0; i < sw.size(); ++i) {
      const std::string w = "/sweep/" + std::to_string(i);
      check_keys(sw[i], w, {"name", "values", "from", "to", "points", "dense_points"});
      Axis a;
      a.name = get_string(require(sw[i], w, "name"), w + "/name");
      if (a.name.empty() || a.name == "state" || a.name == "index") {
        fail(w + "/name", "reserved or empty axis name");
      }
      if (vars.count(a.name)) fail(w + "/name", "duplicate axis '" + a.name + "'");
      if (sw[i].contains("values")) {
        const json& vs = sw[i]["values"];
        if (!vs.is_array()) fail(w + "/values", "expected an array");
        for (size_t k = 0; k < vs.size(); ++k) {
          a.values.push_back(get_constant(vs[k], w + "/values/" + std::to_string(k)));
        }
      } else {
        a.range = true;
        a.from = get_constant(require(sw[i], w, "from"), w + "/from");
        a.to = get_constant(require(sw[i], w, "to"), w + "/to");
        a.points = static_cast<int>(get_int(require(sw[i], w, "points"), w + "/points"));
        if (a.points < 1) fail(w + "/points", "must be positive");
        a.dense_points = sw[i].contains("dense_points")
                             ? static_cast<int>(get_int(sw[i]["dense_points"], w + "/dense_points"))
                             : 4 * (a.points - 1) + 1;
        if (a.dense_points < 1) fail(w + "/dense_points", "must be positive");
        a.values = linspace(a.from, a.to, a.points);
      }
      if (a.values.empty()) fail(w, "sweep grid is empty");
      vars.insert(a.name);
      cfg.axes.push_back(std::move(a));
    }
  }

  const json& st = require(j, "", "state");
  if (st.is_array()) {
    if (st.empty()) fail("/state", "state list is empty");
    for (size_t i = 0; i < st.size(); ++i) {
      cfg.states.push_back(parse_state(st[i], "/state/" + std::to_string(i), vars));
    }
  } else {
    cfg.states.push_back(parse_state(st, "/state", vars));
  }

  const json& plan = require(j, "", "plan");
  check_keys(plan, "/plan", {"rounds", "y_star"});
  const json& rounds = require(plan, "/plan", "rounds");
  if (!rounds.is_array() || rounds.empty()) fail("/plan/rounds", "expected a non-empty array");
  for (size_t i = 0; i < rounds.size(); ++i) {
    const std::string w = "/plan/rounds/" + std::to_string(i);
    check_keys(rounds[i], w, {"y0", "y1"});
    RoundChoice r;
    for (int y = 0; y < 2; ++y) {
      const std::string key = y == 0 ? "y0" : "y1";
      const json& m = require(rounds[i], w, key);
      check_keys(m, w + "/" + key, {"basis", "angle"});
      const Basis b = get_basis(require(m, w + "/" + key, "basis"), w + "/" + key + "/basis");
      const Param p = get_param(require(m, w + "/" + key, "angle"), w + "/" + key + "/angle", vars);
      if (y == 0) {
        r.basis0 = b;
        r.angle0 = p;
      } else {
        r.basis1 = b;
        r.angle1 = p;
      }
    }
    cfg.rounds.push_back(r);
  }
  const json& ys = require(plan, "/plan", "y_star");
  if (!ys.is_array()) fail("/plan/y_star", "expected an array");
  for (size_t i = 0; i < ys.size(); ++i) {
    const std::string w = "/plan/y_star/" + std::to_string(i);
    cfg.y_star.push_back(get_param(ys[i], w, vars));
    const Param& y = cfg.y_star.back();
    if (y.var.empty() && y.value != 0.0 && y.value != 1.0) fail(w, "inputs must be 0 or 1");
  }
  if (cfg.y_star.size() != cfg.rounds.size()) {
    fail("/plan/y_star", "length must equal the number of rounds");
  }

  if (j.contains("mode")) {
    const std::string m = get_string(j["mode"], "/mode");
    if (m == "sdp") {
      cfg.mode = CertMode::kSdp;
    } else if (m == "analytic") {
      cfg.mode = CertMode::kAnalytic;
    } else if (m == "both") {
      cfg.mode = CertMode::kBoth;
    } else {
      fail("/mode", "must be 'sdp', 'analytic' or 'both'");
    }
  }

  if (j.contains("shots")) {
    const json& sh = j["shots"];
    check_keys(sh, "/shots", {"n", "seeds", "bases", "project"});
    cfg.shots.enabled = true;
    cfg.shots.n = get_param(require(sh, "/shots", "n"), "/shots/n", vars);
    if (sh.contains("seeds")) {
      cfg.shots.seeds = static_cast<int>(get_int(sh["seeds"], "/shots/seeds"));
      if (cfg.shots.seeds < 1) fail("/shots/seeds", "must be positive");
    }
    if (sh.contains("bases")) {
      cfg.shots.bases = get_string(sh["bases"], "/shots/bases");
      try {
        parse_paulis(cfg.shots.bases);
      } catch (const std::invalid_argument& e) {
        fail("/shots/bases", e.what());
      }
    }
    if (sh.contains("project")) cfg.shots.project = get_bool(sh["project"], "/shots/project");
    if (cfg.rounds.size() > static_cast<size_t>(kMaxSequenceRounds)) {
      fail("/plan/rounds", "shot simulation supports at most 3 rounds");
    }
  }

  if (j.contains("solver")) {
    const json& so = j["solver"];
    check_keys(so, "/solver", {"tol", "max_iterations", "causal", "anchor",
                               "projective_last_round"});
    if (so.contains("tol")) {
      cfg.solver.tol = get_constant(so["tol"], "/solver/tol");
      if (!(cfg.solver.tol > 0.0)) fail("/solver/tol", "must be positive");
    }
    if (so.contains("max_iterations")) {
      cfg.solver.max_iterations = static_cast<int>(get_int(so["max_iterations"], "/solver/max_iterations"));
      if (cfg.solver.max_iterations < 1) fail("/solver/max_iterations", "must be positive");
    }
    if (so.contains("causal")) cfg.causal = get_bool(so["causal"], "/solver/causal");
    if (so.contains("anchor")) {
      try {
        cfg.anchor = parse_normalization(get_string(so["anchor"], "/solver/anchor"));
      } catch (const std::invalid_argument& e) {
        fail("/solver/anchor", e.what());
      }
    }
    if (so.contains("projective_last_round")) {
      cfg.projective_last_round = get_bool(so["projective_last_round"], "/solver/projective_last_round");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("byte " + std::to_string(e.byte), "syntax error");
  }
  return parse_config(j);
}

json preset_json(const std::string& name) { return json::parse(preset_text(name)); }

std::vector<std::string> preset_names() {
  std::vector<std::string> out = {"fig-one-round", "fig-two-rounds", "fig-three-rounds"};
  for (const char* fam : {"ion-trap-", "atom-photon-", "nv-", "shots-"}) {
    for (int n = 1; n <= 3; ++n) out.push_back(fam + std::to_string(n));
  }
  out.push_back("selftest-harness");
  return out;
}

std::vector<SweepPoint> expand_grid(const ExperimentConfig& cfg, bool dense) {
  std::vector<std::vector<double>> vals;
  for (const Axis& a : cfg.axes) {
    vals.push_back(dense && a.range ? linspace(a.from, a.to, a.dense_points) : a.values);
  }
  std::vector<SweepPoint> out;
  const int ns = static_cast<int>(cfg.states.size());
  std::vector<size_t> idx(vals.size(), 0);
  for (int s = 0; s < ns; ++s) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      SweepPoint p;
      p.index = static_cast<int>(out.size());
      p.state = s;
      for (size_t k = 0; k < vals.size(); ++k) p.env[cfg.axes[k].name] = vals[k][idx[k]];
      out.push_back(std::move(p));
      // Last axis varies fastest.
      int k = static_cast<int>(vals.size()) - 1;
      while (k >= 0 && ++idx[k] == vals[k].size()) idx[k--] = 0;
      if (k < 0) break;
    }
  }
  return out;
}

BoundPoint bind_point(const ExperimentConfig& cfg, const SweepPoint& p) {
  BoundPoint b;
  const StateChoice& sc = cfg.states.at(p.state);
  NoiseStateSpec spec;
  spec.family = sc.family;
  spec.strict = sc.strict;
  for (const auto& [k, v] : sc.params) spec.params[k] = v.resolve(p.env);
  try {
    b.state = generate_state(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/state", e.what());
  }
  for (const RoundChoice& r : cfg.rounds) {
    RoundSettings s;
    s.y0 = {r.basis0, r.angle0.resolve(p.env)};
    s.y1 = {r.basis1, r.angle1.resolve(p.env)};
    b.plan.rounds.push_back(s);
  }
  try {
    b.plan.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/plan", e.what());
  }
  for (const Param& y : cfg.y_star) {
    const double v = y.resolve(p.env);
    if (v != 0.0 && v != 1.0) throw ConfigError("/plan/y_star", "inputs must be 0 or 1");
    b.y_star.push_back(static_cast<int>(v));
  }
  return b;
}

double analytic_h_min(const CMatrix& rho, const MeasurementPlan& plan,
                      const std::vector<int>& y_star) {
  const int n = static_cast<int>(y_star.size());
  const double inf = std::numeric_limits<double>::infinity();
  double worst = -1.0;
  for (int idx = 0; idx < (1 << (n - 1)); ++idx) {
    std::vector<int> b = unpack_bits(idx, n - 1);
    b.push_back(0);
    std::vector<SscStatistics> stats;
    try {
      stats = collect_ssc(rho, plan, b, y_star);
    } catch (const std::runtime_error&) {
      continue;  // unreachable history
    }
    const BoundResult r = theorem1_bound(ssc_evaluate(stats, inf, inf));
    worst = std::max(worst, r.value);
  }
  return worst < 0.0 ? kNaN : -std::log2(worst);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix(splitmix(base ^ splitmix(a)) ^ b);
}

RowResult run_point(const ExperimentConfig& cfg, const SweepPoint& p) {
  RowResult r;
  r.point = p;
  const int n = static_cast<int>(cfg.rounds.size());
  r.steering_weights.assign(n, kNaN);
  r.violations.assign(n, kNaN);
  r.p_guess = r.h_min = r.h_min_lo = r.h_min_hi = r.analytic_h_min = kNaN;
  r.projection_distance = kNaN;
  try {
    const BoundPoint bp = bind_point(cfg, p);
    r.deficit = bp.state.deficit;
    PipelineOptions opts;
    opts.causal = cfg.causal;
    opts.projective_last_round = cfg.projective_last_round;
    opts.guess.anchor = cfg.anchor;
    opts.guess.conic = cfg.solver;
    ConicStatus status = ConicStatus::kOptimal;
    std::string msg;
    if (cfg.mode != CertMode::kAnalytic && !cfg.shots.enabled) {
      const CertificationReport rep = certify_state(bp.state.rho, bp.plan, bp.y_star, opts);
      r.steering_weights = rep.steering_weights;
      r.violations = rep.violations;
      r.p_guess = rep.p_guess;
      r.h_min = r.h_min_lo = r.h_min_hi = rep.h_min;
      r.iterations = rep.iterations;
      r.max_gap = rep.max_gap;
      status = rep.status;
      msg = rep.message;
    } else if (cfg.mode != CertMode::kAnalytic) {
      const Circuit circuit = build_sequence_circuit(bp.plan);
      const std::vector<Pauli> bases = parse_paulis(cfg.shots.bases);
      const long shots = std::lround(cfg.shots.n.resolve(p.env));
      const RoundSettings& last = bp.plan.rounds.back();
      const bool proj = last.y0.projective() && last.y1.projective();
      const int seeds = shots <= 0 ? 1 : cfg.shots.seeds;
      std::vector<double> hs;
      double pg = 0.0, dist = 0.0;
      std::fill(r.steering_weights.begin(), r.steering_weights.end(), 0.0);
      std::fill(r.violations.begin(), r.violations.end(), 0.0);
      for (int s = 0; s < seeds; ++s) {
        const ShotRecord rec = sample_shots(circuit, bp.state.rho, bases, shots,
                                            derive_seed(cfg.seed, p.index, s));
        const EstimatedAssemblage est = estimate_assemblage(rec, cfg.shots.project);
        const CertificationReport rep = certify_assemblages(est.rounds, bp.y_star, proj, opts);
        hs.push_back(rep.h_min);
        pg += rep.p_guess / seeds;
        dist += est.projection_distance / seeds;
        for (int i = 0; i < n; ++i) {
          r.steering_weights[i] += rep.steering_weights[i] / seeds;
          r.violations[i] += rep.violations[i] / seeds;
        }
        r.iterations += rep.iterations;
        r.max_gap = std::max(r.max_gap, rep.max_gap);
        if (!usable(rep.status) && msg.empty()) msg = "seed " + std::to_string(s) + ": " + rep.message;
        status = worse_status(status, rep.status);
      }
      double sum = 0.0;
      for (double h : hs) sum += h;
      r.h_min = sum / seeds;
      r.h_min_lo = *std::min_element(hs.begin(), hs.end());
      r.h_min_hi = *std::max_element(hs.begin(), hs.end());
      r.p_guess = pg;
      r.projection_distance = dist;
    }
    if (cfg.mode != CertMode::kSdp) {
      r.analytic_h_min = analytic_h_min(bp.state.rho, bp.plan, bp.y_star);
    }
    r.status = cfg.mode == CertMode::kAnalytic ? "analytic" : status_name(status);
    r.ok = cfg.mode == CertMode::kAnalytic || usable(status);
    r.message = msg;
  } catch (const std::exception& e) {
    r.ok = false;
    r.status = "error";
    r.message = e.what();
  }
  return r;
}

void write_csv_header(std::ostream& os, const ExperimentConfig& cfg) {
  os << "# seqrand-csv v" << kCsvVersion << " run=" << cfg.name
     << " rounds=" << cfg.rounds.size() << " seed=" << cfg.seed
     << " columns: index, [state], sweep axes, sw_i and v_i per round"
        " (steering weight, violation), p_guess, h_min, [h_min_lo, h_min_hi,"
        " proj_dist for shots], [h_analytic], deficit, status, iterations,"
        " max_gap, message\n";
  os << "index";
  if (cfg.states.size() > 1) os << ",state";
  for (const Axis& a : cfg.axes) os << ',' << a.name;
  for (size_t i = 1; i <= cfg.rounds.size(); ++i) os << ",sw_" << i << ",v_" << i;
  os << ",p_guess,h_min";
  if (cfg.shots.enabled) os << ",h_min_lo,h_min_hi,proj_dist";
  if (cfg.mode != CertMode::kSdp) os << ",h_analytic";
  os << ",deficit,status,iterations,max_gap,message\n";
}

void write_csv_row(std::ostream& os, const ExperimentConfig& cfg,
                   const RowResult& r) {
  os << r.point.index;
  if (cfg.states.size() > 1) os << ',' << csv_escape(cfg.states[r.point.state].label);
  for (const Axis& a : cfg.axes) os << ',' << fmt_num(r.point.env.at(a.name));
  for (size_t i = 0; i < cfg.rounds.size(); ++i) {
    os << ',' << fmt_num(r.steering_weights[i]) << ',' << fmt_num(r.violations[i]);
  }
  os << ',' << fmt_num(r.p_guess) << ',' << fmt_num(r.h_min);
  if (cfg.shots.enabled) {
    os << ',' << fmt_num(r.h_min_lo) << ',' << fmt_num(r.h_min_hi) << ','
       << fmt_num(r.projection_distance);
  }
  if (cfg.mode != CertMode::kSdp) os << ',' << fmt_num(r.analytic_h_min);
  os << ',' << fmt_num(r.deficit) << ',' << r.status << ',' << r.iterations << ','
     << fmt_num(r.max_gap) << ',' << csv_escape(r.message) << '\n';
}

RunSummary run_experiment(const ExperimentConfig& cfg, bool dense, int threads,
                          std::ostream& os) {
  if (cfg.kind == "selftest-harness") {
    const std::vector<HarnessRow> rows = run_selftest_harness(cfg.instances, cfg.seed);
    os << "# seqrand-csv v" << kCsvVersion << " run=" << cfg.name
       << " instances=" << cfg.instances << " seed=" << cfg.seed
       << " columns: seed, check, lhs, rhs, margin (rhs - lhs)\n";
    write_harness_csv(os, rows);
    RunSummary s;
    s.points = static_cast<int>(rows.size());
    for (const HarnessRow& r : rows) s.failed += r.margin() < -1e-12;
    return s;
  }
  const std::vector<SweepPoint> grid = expand_grid(cfg, dense);
  std::vector<RowResult> rows(grid.size());
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(grid.size()));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < grid.size(); i = next++) rows[i] = run_point(cfg, grid[i]);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  write_csv_header(os, cfg);
  RunSummary s;
  s.points = static_cast<int>(rows.size());
  for (const RowResult& r : rows) {
    write_csv_row(os, cfg, r);
    s.failed += !r.ok;
  }
  return s;
}

}  // namespace seqrand
