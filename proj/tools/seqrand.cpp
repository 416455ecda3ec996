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

// Command-line front end. Exit codes: 0 success, 1 a verification found a
// violated inequality, 2 configuration error, 3 solver failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqrand/circuit.h"
#include "seqrand/experiment.h"
#include "seqrand/noise.h"
#include "seqrand/selftest.h"
#include "seqrand/steering.h"
#include "seqrand/tqsm.h"

namespace {

using namespace seqrand;

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Globals {
  std::uint64_t seed = 1;
  double tol = ConicOptions{}.tol;
  bool non_causal = false;
  bool dense = false;
  std::string out;
  std::string anchor = "trace";
  int threads = 0;
  bool verbose = false;
};

struct StateArgs {
  std::string family = "pure";
  std::vector<std::string> params;
  std::string theta = "0";
  std::string phi;
  std::string y;
  bool corrections = false;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(parse_constant(tok));
  return out;
}

struct Problem {
  CMatrix rho;
  double deficit = 0.0;
  MeasurementPlan plan;
  std::vector<int> y_star;
};

Problem build_problem(const StateArgs& a) {
  Problem p;
  NoiseStateSpec spec;
  spec.family = parse_family(a.family);
  for (const std::string& kv : a.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--param", "expected key=value, got '" + kv + "'");
    spec.params[kv.substr(0, eq)] = parse_constant(kv.substr(eq + 1));
  }
  if (spec.family == StateFamily::kPure && !spec.params.count("zeta")) {
    spec.params["zeta"] = M_PI / 4;
  }
  const GeneratedState g = generate_state(spec);
  p.rho = g.rho;
  p.deficit = g.deficit;
  const std::vector<double> theta = parse_list(a.theta);
  std::vector<double> phi = a.phi.empty() ? std::vector<double>(theta.size(), 0.0)
                                          : parse_list(a.phi);
  if (phi.size() != theta.size()) throw ConfigError("--phi", "needs one angle per round");
  for (size_t i = 0; i < theta.size(); ++i) {
    p.plan.rounds.push_back({{Basis::kZ, phi[i]}, {Basis::kX, theta[i]}});
  }
  p.plan.validate();
  if (a.y.empty()) {
    for (size_t i = 0; i < theta.size(); ++i) p.y_star.push_back(i % 2 == 0 ? 1 : 0);
  } else {
    for (double v : parse_list(a.y)) {
      if (v != 0.0 && v != 1.0) throw ConfigError("--y", "inputs must be 0 or 1");
      p.y_star.push_back(static_cast<int>(v));
    }
  }
  if (p.y_star.size() != theta.size()) throw ConfigError("--y", "needs one input per round");
  return p;
}

void add_state_options(CLI::App* sub, StateArgs* a) {
  sub->add_option("--family", a->family,
                  "state family: pure, bell, depolarized, purified, atom-photon, nv")
      ->capture_default_str();
  sub->add_option("--param", a->params, "state parameter key=value (repeatable)");
  sub->add_option("--theta", a->theta, "X angles per round, comma separated")
      ->capture_default_str();
  sub->add_option("--phi", a->phi, "Z angles per round (default all 0)");
  sub->add_option("--y", a->y, "measurement inputs y* per round (default 1,0,1,...)");
}

PipelineOptions pipeline_options(const Globals& g) {
  PipelineOptions o;
  o.causal = !g.non_causal;
  o.guess.anchor = parse_normalization(g.anchor);
  o.guess.conic.tol = g.tol;
  o.guess.conic.verbose = g.verbose;
  return o;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

bool usable(ConicStatus s) {
  return s == ConicStatus::kOptimal || s == ConicStatus::kOptimalInaccurate;
}

void write_element(std::ostream& os, const CMatrix& m) {
  os << num(m(0, 0).real()) << ',' << num(m(0, 1).real()) << ','
     << num(m(0, 1).imag()) << ',' << num(m(1, 1).real());
}

int cmd_simulate(const Globals&, const StateArgs& a, std::ostream& os) {
  const Problem p = build_problem(a);
  os << "# seqrand-csv v" << kCsvVersion << " simulate\n";
  os << "round,y,b,prob,re00,re01,im01,re11\n";
  for (int r = 1; r <= p.plan.size(); ++r) {
    const Assemblage as = assemblage_at_round(p.rho, p.plan, r, a.corrections);
    for (int y = 0; y < as.histories(); ++y) {
      for (int b = 0; b < as.histories(); ++b) {
        os << r << ',' << bits_string(unpack_bits(y, r)) << ','
           << bits_string(unpack_bits(b, r)) << ',' << num(as.prob(b, y)) << ',';
        write_element(os, as.at(b, y));
        os << '\n';
      }
    }
  }
  return 0;
}

int cmd_steering_weight(const Globals& g, const StateArgs& a, std::ostream& os) {
  const Problem p = build_problem(a);
  const PipelineOptions o = pipeline_options(g);
  os << "# seqrand-csv v" << kCsvVersion << " steering-weight\n";
  os << "round,sw_primal,sw_dual,gap,status_primal,status_dual\n";
  int rc = 0;
  for (int r = 1; r <= p.plan.size(); ++r) {
    const Assemblage as = assemblage_at_round(p.rho, p.plan, r);
    const SteeringWeightResult pr = steering_weight(as, o.causal, o.guess.conic);
    const SteeringInequalityResult du = steering_inequality(as, o.causal, o.guess.conic);
    os << r << ',' << num(pr.sw) << ',' << num(du.sw) << ',' << num(std::abs(pr.sw - du.sw))
       << ',' << status_name(pr.solver.status) << ',' << status_name(du.solver.status) << '\n';
    if (!usable(pr.solver.status) || !usable(du.solver.status)) rc = kExitSolver;
  }
  return rc;
}

int cmd_inequality(const Globals& g, const StateArgs& a, std::ostream& os) {
  const Problem p = build_problem(a);
  const PipelineOptions o = pipeline_options(g);
  os << "# seqrand-csv v" << kCsvVersion << " inequality\n";
  os << "round,y,b,f00,f01_re,f01_im,f11,violation,sw,status\n";
  int rc = 0;
  for (int r = 1; r <= p.plan.size(); ++r) {
    const Assemblage as = assemblage_at_round(p.rho, p.plan, r);
    const SteeringInequalityResult du = steering_inequality(as, o.causal, o.guess.conic);
    const double v = violation(du.functional, as);
    for (int y = 0; y < as.histories(); ++y) {
      for (int b = 0; b < as.histories(); ++b) {
        os << r << ',' << bits_string(unpack_bits(y, r)) << ','
           << bits_string(unpack_bits(b, r)) << ',';
        write_element(os, du.functional.at(b, y));
        os << ',' << num(v) << ',' << num(du.sw) << ',' << status_name(du.solver.status) << '\n';
      }
    }
    if (!usable(du.solver.status)) rc = kExitSolver;
  }
  return rc;
}

void write_report(std::ostream& os, const CertificationReport& rep) {
  os << "round,sw,v\n";
  for (size_t i = 0; i < rep.violations.size(); ++i) {
    os << i + 1 << ',' << num(rep.steering_weights[i]) << ',' << num(rep.violations[i]) << '\n';
  }
  os << "p_guess,h_min,best_b,status,iterations,max_gap,message\n";
  std::string msg = rep.message;
  for (char& c : msg) {
    if (c == ',' || c == '\n') c = ';';
  }
  os << num(rep.p_guess) << ',' << num(rep.h_min) << ','
     << bits_string(unpack_bits(rep.best_outcome, rep.rounds)) << ','
     << status_name(rep.status) << ',' << rep.iterations << ',' << num(rep.max_gap) << ','
     << msg << '\n';
}

int cmd_certify(const Globals& g, const StateArgs& a, std::ostream& os) {
  const Problem p = build_problem(a);
  const CertificationReport rep = certify_state(p.rho, p.plan, p.y_star, pipeline_options(g));
  os << "# seqrand-csv v" << kCsvVersion << " certify\n";
  write_report(os, rep);
  return usable(rep.status) ? 0 : kExitSolver;
}

struct AnalyticArgs {
  std::string theorem = "1";
  double eps1 = 0.0, eps2 = 0.0, zeta = M_PI / 4;
  int n = 1;
  double c = 0.5;
  bool from_state = false;
};

int cmd_analytic(const StateArgs& sa, const AnalyticArgs& a, std::ostream& os) {
  os << "# seqrand-csv v" << kCsvVersion << " analytic-bound theorem=" << a.theorem << '\n';
  if (a.theorem == "2") {
    const MinEntropySchedule s = theorem2_minentropy(a.n, a.c);
    os << "round,log_theta,log_zeta\n";
    for (int i = 0; i < s.n; ++i) {
      os << i + 1 << ',' << num(s.log_theta[i]) << ',' << num(s.log_zeta[i]) << '\n';
    }
    os << "n,c,d,bound,target\n";
    os << s.n << ',' << num(s.c) << ',' << num(s.d) << ',' << num(s.bound) << ','
       << num(s.target) << '\n';
    return 0;
  }
  if (a.theorem == "corollary") {
    const BoundResult b = corollary_bounds(a.eps1, a.eps2, a.zeta);
    os << "eps1,eps2,zeta,raw,p_guess_bound,h_min,vacuous\n";
    os << num(a.eps1) << ',' << num(a.eps2) << ',' << num(a.zeta) << ',' << num(b.raw) << ','
       << num(b.value) << ',' << num(std::max(0.0, -std::log2(b.value))) << ',' << b.vacuous << '\n';
    return 0;
  }
  if (a.theorem != "1") throw ConfigError("--theorem", "must be 1, 2 or corollary");
  if (a.from_state) {
    const Problem p = build_problem(sa);
    os << "h_analytic\n" << num(analytic_h_min(p.rho, p.plan, p.y_star)) << '\n';
    return 0;
  }
  SscReport rep;
  for (int i = 0; i < a.n; ++i) {
    SscRound r;
    r.round = i + 1;
    r.eps1 = a.eps1;
    r.eps2 = a.eps2;
    r.zeta = a.zeta;
    r.rejected = !(a.zeta > 0.0 && a.zeta <= M_PI / 4 + 1e-12);
    r.pass = !r.rejected;
    rep.rounds.push_back(r);
  }
  const BoundResult b = theorem1_bound(rep);
  os << "n,eps1,eps2,zeta,raw,p_guess_bound,h_min,vacuous\n";
  os << a.n << ',' << num(a.eps1) << ',' << num(a.eps2) << ',' << num(a.zeta) << ','
     << num(b.raw) << ',' << num(b.value) << ',' << num(std::max(0.0, -std::log2(b.value))) << ','
     << b.vacuous << '\n';
  return 0;
}

int cmd_selftest(const Globals& g, int instances, std::ostream& os) {
  if (instances < 1) throw ConfigError("--instances", "must be positive");
  const std::vector<HarnessRow> rows = run_selftest_harness(instances, g.seed);
  os << "# seqrand-csv v" << kCsvVersion << " selftest-verify instances=" << instances
     << " seed=" << g.seed << '\n';
  write_harness_csv(os, rows);
  int failed = 0;
  for (const HarnessRow& r : rows) failed += r.margin() < -1e-12;
  std::cerr << rows.size() << " checks, " << failed << " violated\n";
  return failed ? kExitCheckFailed : 0;
}

struct TomoArgs {
  long shots = 1000;
  std::string bases = "XYZ";
  bool no_project = false;
};

int cmd_tomography(const Globals& g, const StateArgs& a, const TomoArgs& t,
                   std::ostream& os) {
  const Problem p = build_problem(a);
  if (p.plan.size() > kMaxSequenceRounds) {
    throw ConfigError("--theta", "shot simulation supports at most 3 rounds");
  }
  const Circuit c = build_sequence_circuit(p.plan);
  const ShotRecord rec = sample_shots(c, p.rho, parse_paulis(t.bases), t.shots, g.seed);
  const EstimatedAssemblage est = estimate_assemblage(rec, !t.no_project);
  const Assemblage exact = assemblage_at_round(p.rho, p.plan, p.plan.size());
  const RoundSettings& last = p.plan.rounds.back();
  const CertificationReport rep =
      certify_assemblages(est.rounds, p.y_star, last.y0.projective() && last.y1.projective(),
                          pipeline_options(g));
  os << "# seqrand-csv v" << kCsvVersion << " tomography shots=" << t.shots
     << " bases=" << t.bases << " seed=" << g.seed << '\n';
  os << "y,b,p_hat,rx,ry,rz,rescaled,omitted,re00,re01,im01,re11,exact_distance\n";
  const Assemblage& fin = est.rounds.back();
  for (int y = 0; y < fin.histories(); ++y) {
    for (int b = 0; b < fin.histories(); ++b) {
      const TomographyResult tr = direct_inversion(rec, b, y);
      os << bits_string(unpack_bits(y, fin.round)) << ','
         << bits_string(unpack_bits(b, fin.round)) << ',' << num(tr.prob) << ','
         << num(tr.raw[0]) << ',' << num(tr.raw[1]) << ',' << num(tr.raw[2]) << ','
         << tr.rescaled << ',' << tr.omitted << ',';
      write_element(os, fin.at(b, y));
      os << ',' << num((fin.at(b, y) - exact.at(b, y)).norm()) << '\n';
    }
  }
  os << "projection_distance,mixing,omitted\n";
  os << num(est.projection_distance) << ',' << num(est.mixing) << ',' << est.omitted << '\n';
  write_report(os, rep);
  return usable(rep.status) ? 0 : kExitSolver;
}

int cmd_run(const Globals& g, const std::string& target, bool print_config,
            bool no_project, std::ostream* out_override) {
  ExperimentConfig cfg;
  nlohmann::json j;
  if (std::filesystem::exists(target)) {
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(target + ": byte " + std::to_string(e.byte), "syntax error");
    }
  } else {
    j = preset_json(target);
  }
  if (print_config) {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  // Command-line flags override the file.
  if (!j.contains("seed") || g.seed != 1) j["seed"] = g.seed;
  cfg = parse_config(j);
  cfg.solver.tol = g.tol;
  if (g.non_causal) cfg.causal = false;
  if (g.anchor != "trace") cfg.anchor = parse_normalization(g.anchor);
  if (no_project) cfg.shots.project = false;
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = out_override;
  if (!os) {
    const std::string path = !g.out.empty() ? g.out : cfg.output;
    if (path.empty()) {
      os = &std::cout;
    } else {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw ConfigError("--out", "cannot open '" + path + "'");
      os = file.get();
    }
  }
  const RunSummary s = run_experiment(cfg, g.dense, g.threads, *os);
  std::cerr << cfg.name << ": " << s.points << " rows, " << s.failed << " failed\n";
  if (s.failed == 0) return 0;
  return cfg.kind == "selftest-harness" ? kExitCheckFailed : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential randomness certification from steering assemblages"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "interior-point tolerance")->capture_default_str();
  app.add_flag("--causal,!--non-causal", g.non_causal,
               "deterministic strategies respect causality (default)");
  app.add_flag("--dense", g.dense, "use the dense sweep grids");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--anchor", g.anchor, "normalization of Eve's assemblage: trace or rho")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for sweeps (0: all cores)");
  app.add_flag("--verbose", g.verbose, "print solver iterations to stderr");

  StateArgs sa;
  auto* sim = app.add_subcommand("simulate", "assemblages of every round");
  add_state_options(sim, &sa);
  sim->add_flag("--corrections", sa.corrections, "apply corrective unitaries");
  auto* sw = app.add_subcommand("steering-weight", "primal and dual steering weight per round");
  add_state_options(sw, &sa);
  auto* ineq = app.add_subcommand("inequality", "optimal steering functional per round");
  add_state_options(ineq, &sa);
  auto* cert = app.add_subcommand("certify", "guessing probability and min-entropy");
  add_state_options(cert, &sa);

  AnalyticArgs aa;
  auto* ab = app.add_subcommand("analytic-bound", "closed-form guessing bounds");
  add_state_options(ab, &sa);
  ab->add_option("--theorem", aa.theorem, "1, 2 or corollary")->capture_default_str();
  ab->add_option("--eps1", aa.eps1, "criterion deviation eps1");
  ab->add_option("--eps2", aa.eps2, "criterion deviation eps2");
  ab->add_option("--zeta", aa.zeta, "state angle");
  ab->add_option("--n", aa.n, "rounds");
  ab->add_option("--c", aa.c, "entropy-loss fraction for theorem 2");
  ab->add_flag("--from-state", aa.from_state, "measure eps from the state and plan");

  int instances = 200;
  auto* st = app.add_subcommand("selftest-verify", "randomized check of the self-testing bounds");
  st->add_option("--instances", instances, "number of random instances")->capture_default_str();

  TomoArgs ta;
  auto* tomo = app.add_subcommand("tomography", "finite-shot estimate and certification");
  add_state_options(tomo, &sa);
  tomo->add_option("--shots", ta.shots, "shots per (y, basis); 0 for exact")->capture_default_str();
  tomo->add_option("--bases", ta.bases, "Alice's Pauli bases")->capture_default_str();
  tomo->add_flag("--no-project", ta.no_project, "skip the no-signalling projection");

  std::string target;
  bool print_config = false, list = false, run_no_project = false;
  auto* run = app.add_subcommand("run", "run a preset or a JSON config file");
  run->add_option("target", target, "preset name or config path");
  run->add_flag("--print-config", print_config, "print the resolved config and exit");
  run->add_flag("--list", list, "list presets");
  run->add_flag("--no-project", run_no_project, "skip the no-signalling projection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;
  if (!g.out.empty() && !run->parsed()) {
    file = std::make_unique<std::ofstream>(g.out);
    if (!*file) {
      std::cerr << "error: cannot open '" << g.out << "'\n";
      return kExitConfig;
    }
    os = file.get();
  }

  try {
    if (sim->parsed()) return cmd_simulate(g, sa, *os);
    if (sw->parsed()) return cmd_steering_weight(g, sa, *os);
    if (ineq->parsed()) return cmd_inequality(g, sa, *os);
    if (cert->parsed()) return cmd_certify(g, sa, *os);
    if (ab->parsed()) return cmd_analytic(sa, aa, *os);
    if (st->parsed()) return cmd_selftest(g, instances, *os);
    if (tomo->parsed()) return cmd_tomography(g, sa, ta, *os);
    if (run->parsed()) {
      if (list) {
        for (const std::string& n : preset_names()) std::cout << n << '\n';
        return 0;
      }
      if (target.empty()) throw ConfigError("run", "missing preset name or config path");
      return cmd_run(g, target, print_config, run_no_project, nullptr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::length_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
