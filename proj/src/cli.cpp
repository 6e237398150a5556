// Copyright 2026 The HQC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqc/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hqc/calogero_moser.hpp"
#include "hqc/permanent.hpp"
#include "hqc/runtime.hpp"
#include "hqc/single_mode.hpp"
#include "hqc/table3.hpp"

namespace hqc {

namespace {

struct Globals {
  uint64_t seed = 0;
  int shots = 1000;
  int cutoff = 0;
  std::string out;
  std::string format;
  int threads = 0;
  int bins = 0;
};

std::vector<int> parse_int_list(const std::string &s, const char *what) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int x = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception &) {
      throw ValidationError(std::string("bad integer list for ") + what + ": '" + s + "'");
    }
  }
  if (v.empty()) throw ValidationError(std::string("empty list for ") + what);
  return v;
}

void emit(const Globals &g, const std::string &text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + g.out);
  f << text;
}

std::string format_or(const Globals &g, const char *dflt) {
  const std::string f = g.format.empty() ? dflt : g.format;
  if (f != "json" && f != "csv") throw ValidationError("--format must be json or csv");
  return f;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw ValidationError("steps must be at least 2");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = a + (b - a) * i / (n - 1);
  return t;
}

double num(const Json &j, const char *key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) throw ValidationError(std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

struct StellarTrace {
  StellarState state;
  Gate::Kind kind;
  cplx drive;
  double t0, t1, t;
  int steps;
};

StellarTrace parse_stellar_trace(const Json &j, const std::string &where) {
  std::vector<cplx> zeros;
  if (j.contains("zeros")) {
    CVec z = parse_cvector(j["zeros"], where + ".zeros");
    zeros.assign(z.data(), z.data() + z.size());
  }
  cplx a = j.contains("a") ? parse_complex(j["a"], where + ".a") : 0.0;
  cplx b = j.contains("b") ? parse_complex(j["b"], where + ".b") : 0.0;
  cplx c = j.contains("c") ? parse_complex(j["c"], where + ".c") : 0.0;
  const Json &gate = require(j, "gate", where);
  if (!gate.is_string()) throw ValidationError(where + ".gate: expected a string");
  const std::string gs = gate.get<std::string>();
  Gate::Kind kind;
  if (gs == "displace") kind = Gate::Kind::Displace;
  else if (gs == "squeeze") kind = Gate::Kind::Squeeze;
  else if (gs == "phase") kind = Gate::Kind::Phase;
  else if (gs == "shear") kind = Gate::Kind::Shear;
  else throw ValidationError(where + ".gate: unknown single-mode gate '" + gs + "'");
  StellarTrace tr{from_zeros(zeros, a, b, c), kind, parse_complex(require(j, "drive", where), where + ".drive"),
                  num(j, "t0", 0.0), num(j, "t1", 1.0), 0.0, 0};
  tr.t = num(j, "t", tr.t1);
  const double steps = num(j, "steps", 101);
  tr.steps = static_cast<int>(steps);
  return tr;
}

SamplerConfig sampler_config(const Globals &g) {
  SamplerConfig cfg;
  cfg.seed = g.seed;
  cfg.shots = g.shots;
  cfg.cutoff = g.cutoff;
  return cfg;
}

void run_and_emit(const Globals &g, const CircuitSpec &spec, bool final, const char *name) {
  RunResult r = run_circuit(spec, sampler_config(g), final);
  std::cerr << "hqc " << name << ": " << r.shots << " shots in " << r.seconds << " s\n";
  if (g.bins > 0) {
    emit(g, binned_csv(r, g.bins));
  } else if (format_or(g, "csv") == "csv") {
    emit(g, run_result_csv(r));
  } else {
    emit(g, dump_json(run_result_json(r)));
  }
}

int cmd_run(const Globals &g, const std::string &path, bool final) {
  run_and_emit(g, load_circuit(path), final, "run");
  return 0;
}

int cmd_sample(const Globals &g, const std::string &path, const std::string &kind,
               const std::string &modes) {
  CircuitSpec spec = load_circuit(path);
  MeasureDecl md;
  if (kind == "continuous") md.kind = MeasureKind::Continuous;
  else if (kind == "discrete") md.kind = MeasureKind::Discrete;
  else if (kind == "homodyne") md.kind = MeasureKind::Homodyne;
  else throw ValidationError("--kind must be continuous, discrete or homodyne");
  if (modes.empty()) {
    for (int k = 0; k < spec.modes; ++k) md.modes.push_back(k);
  } else {
    md.modes = parse_int_list(modes, "--modes");
  }
  md.bind = "sample";
  md.after = static_cast<int>(spec.gates.size());
  for (const auto &gd : spec.gates) {
    if (gd.adaptive()) throw ValidationError("sample needs a circuit without adaptive gates");
  }
  spec.measurements = {md};
  validate_circuit(spec);
  run_and_emit(g, spec, false, "sample");
  return 0;
}

int cmd_prob(const Globals &g, const std::string &path, const std::string &outcome,
             const std::string &modes_arg) {
  CircuitSpec spec = load_circuit(path);
  StellarState s = normalized(evolve_circuit_state(spec));
  std::vector<int> modes;
  if (modes_arg.empty()) {
    for (int k = 0; k < spec.modes; ++k) modes.push_back(k);
  } else {
    modes = parse_int_list(modes_arg, "--modes");
  }
  MultiIndex n = parse_int_list(outcome, "--outcome");
  if (n.size() != modes.size()) throw ValidationError("--outcome length must match the measured modes");
  for (int x : n) {
    if (x < 0) throw ValidationError("--outcome entries must be non-negative");
  }
  const int need = total_degree(n);
  const int cutoff = std::max({g.cutoff, need, norm_squared_detail(s).cutoff});
  double captured = 0.0;
  auto probs = fock_probabilities(s, cutoff, &captured);
  double p = 0.0;
  for (auto &[k, v] : probs) {
    bool match = true;
    for (size_t i = 0; i < modes.size(); ++i) match = match && k[modes[i]] == n[i];
    if (match) p += v;
  }
  if (format_or(g, "json") == "csv") {
    emit(g, "probability\n" + fmt17(p) + "\n");
  } else {
    emit(g, dump_json(Json{{"outcome", n}, {"modes", modes}, {"probability", p},
                           {"captured_norm", captured}, {"cutoff", cutoff}}));
  }
  return 0;
}

int cmd_rank(const Globals &g, const std::string &path) {
  CircuitSpec spec = load_circuit(path);
  StellarState s = evolve_circuit_state(spec);
  Json j{{"modes", s.modes()}, {"rank", stellar_rank(s)}};
  emit(g, format_or(g, "json") == "csv" ? "modes,rank\n" + std::to_string(s.modes()) + "," +
                                              std::to_string(stellar_rank(s)) + "\n"
                                        : dump_json(j));
  return 0;
}

int cmd_schmidt(const Globals &g, const std::string &path, const std::string &part) {
  CircuitSpec spec = load_circuit(path);
  StellarState s = evolve_circuit_state(spec);
  SchmidtForm f = schmidt_form(s, parse_int_list(part, "--partition"));
  Json cross = Json::array();
  for (auto &[ij, lam] : f.cross_terms) {
    cross.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"lambda", complex_to_json(lam)}});
  }
  emit(g, dump_json(Json{{"I", f.I}, {"J", f.J}, {"rank", f.rank},
                         {"coefficients", f.coefficients}, {"cross_terms", cross},
                         {"separable", f.separable}}));
  return 0;
}

int cmd_decompose(const Globals &g, const std::string &path) {
  CircuitSpec spec = load_circuit(path);
  StellarState s = evolve_circuit_state(spec);
  NormalDecomposition d = decompose_normal(s);
  Json core = Json::array();
  for (auto &[n, c] : d.P.terms()) core.push_back(Json{{"n", n}, {"c", complex_to_json(c)}});
  const double ov = normalized_overlap(reconstruct(d), s);
  emit(g, dump_json(Json{{"beta", cvector_to_json(d.beta)},
                         {"xi", cvector_to_json(d.xi)},
                         {"U", cmatrix_to_json(d.U)},
                         {"core_poly", core},
                         {"reconstruction_overlap", ov}}));
  return ov >= 1.0 - 1e-8 ? 0 : 2;
}

int cmd_cm_trace(const Globals &g, const std::string &path) {
  Json j = load_json_file(path);
  const std::string sys = j.contains("system") && j["system"].is_string()
                              ? j["system"].get<std::string>()
                              : "stellar";
  if (sys == "stellar") {
    StellarTrace tr = parse_stellar_trace(j, path);
    ZeroTrajectory z = closed_form_trajectory(tr.state, hamiltonian_of(tr.kind, tr.drive),
                                              linspace(tr.t0, tr.t1, tr.steps));
    emit(g, trajectory_csv(z));
    return 0;
  }
  if (sys != "cm") throw ValidationError(path + ".system: expected stellar or cm");
  CMSystem cm;
  cm.q0 = parse_cvector(require(j, "q0", path), path + ".q0");
  cm.p0 = parse_cvector(require(j, "p0", path), path + ".p0");
  cm.g = j.contains("g") ? parse_complex(j["g"], path + ".g") : 1.0;
  cm.omega = j.contains("omega") ? parse_complex(j["omega"], path + ".omega") : 0.0;
  check_cm_system(cm);
  std::vector<double> times = linspace(num(j, "t0", 0.0), num(j, "t1", 1.0),
                                       static_cast<int>(num(j, "steps", 101)));
  std::vector<CMPoint> pts = cm_trajectory(cm, times);
  std::ostringstream os;
  const int n = cm.size();
  os << "t";
  for (int k = 1; k <= n; ++k) os << ",re_q" << k << ",im_q" << k;
  for (int k = 1; k <= n; ++k) os << ",re_p" << k << ",im_p" << k;
  os << "\n";
  for (size_t i = 0; i < times.size(); ++i) {
    os << fmt17(times[i]);
    for (int k = 0; k < n; ++k) os << ',' << fmt17(pts[i].q[k].real()) << ',' << fmt17(pts[i].q[k].imag());
    for (int k = 0; k < n; ++k) os << ',' << fmt17(pts[i].p[k].real()) << ',' << fmt17(pts[i].p[k].imag());
    os << "\n";
  }
  emit(g, os.str());
  return 0;
}

int cmd_evolve(const Globals &g, const std::string &path, const std::string &route, double dt) {
  Json j = load_json_file(path);
  StellarTrace tr = parse_stellar_trace(j, path);
  StellarState out = tr.state;
  if (route == "closed") {
    out = evolve_closed_form(tr.state, tr.kind, tr.drive, tr.t);
  } else if (route == "direct") {
    const cplx p = tr.drive * tr.t;
    switch (tr.kind) {
      case Gate::Kind::Displace: out = direct_apply_D(tr.state, p); break;
      case Gate::Kind::Phase: out = direct_apply_R(tr.state, p.real()); break;
      case Gate::Kind::Squeeze: out = direct_apply_S(tr.state, p); break;
      default: out = direct_apply_P(tr.state, p.real()); break;
    }
  } else if (route == "ode") {
    const double h = dt > 0 ? dt : 1e-4 * std::max(std::abs(tr.t), 1e-12);
    out = ode_final_state(tr.state, hamiltonian_of(tr.kind, tr.drive), tr.t, h);
  } else {
    throw ValidationError("--route must be closed, direct or ode");
  }
  Json js = state_to_json(out);
  if (stellar_rank(out) > 0) {
    ZeroForm z = to_zero_form(out);
    js["zeros"] = cvector_to_json(Eigen::Map<CVec>(z.zeros.data(), z.zeros.size()));
  }
  js["norm_squared"] = norm_squared(out);
  emit(g, dump_json(js));
  return 0;
}

int cmd_table3(const Globals &g, const std::string &arch, int modes, int photons) {
  std::vector<Architecture> list;
  if (arch == "all") list = all_architectures();
  else list = {parse_architecture(arch)};
  bool ok = true;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "architecture,label,efficient,brute,abs_diff\n";
  for (Architecture a : list) {
    Table3Report r = table3_demo(a, modes, photons);
    std::cerr << "hqc table3: " << architecture_name(a) << " efficient " << r.seconds_efficient
              << " s, brute " << r.seconds_brute << " s\n";
    ok = ok && r.pass;
    rows.push_back(table3_to_json(r));
    for (const auto &c : r.checks) {
      csv << architecture_name(a) << ',' << c.label << ',' << fmt17(c.efficient) << ','
          << fmt17(c.brute) << ',' << fmt17(c.diff()) << "\n";
    }
  }
  emit(g, format_or(g, "json") == "csv" ? csv.str() : dump_json(rows));
  return ok ? 0 : 2;
}

int cmd_perm(const Globals &g, const std::string &arg, bool parallel) {
  Json j = std::filesystem::exists(arg) ? load_json_file(arg) : parse_json_text(arg, "<matrix>");
  if (j.is_object()) j = require(j, "matrix", "<matrix>");
  CMat M = parse_cmatrix(j, "matrix");
  const cplx p = parallel ? permanent_parallel(M) : permanent(M);
  emit(g, format_or(g, "json") == "csv" ? "re,im\n" + fmt17(p.real()) + "," + fmt17(p.imag()) + "\n"
                                        : dump_json(Json{{"permanent", complex_to_json(p)}}));
  return 0;
}

}  // namespace

int cli_main(int argc, char **argv) {
  CLI::App app{"hqc: stellar-representation simulator for bosonic circuits"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  if (const char *env = std::getenv("HQC_SEED")) {
    try {
      g.seed = std::stoull(env);
    } catch (const std::exception &) {
      std::cerr << "error: HQC_SEED is not an unsigned integer\n";
      return 1;
    }
  }
  app.add_option("--seed", g.seed, "RNG seed (default: $HQC_SEED or 0)");
  app.add_option("--shots", g.shots, "number of shots")->check(CLI::PositiveNumber);
  app.add_option("--cutoff", g.cutoff, "Fock cutoff (0: adaptive)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "output file (default: stdout)");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "OpenMP threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--bins", g.bins, "histogram continuous outcomes on a bins x bins grid")
      ->check(CLI::NonNegativeNumber);

  std::string file, kind = "discrete", modes, outcome, partition = "0", route = "closed";
  std::string arch = "all", matrix;
  bool final = false, parallel = false;
  double dt = 0.0;
  int t3modes = 3, t3photons = 2;

  auto *run = app.add_subcommand("run", "execute a circuit");
  run->add_option("circuit", file, "circuit JSON")->required();
  run->add_flag("--final", final, "report rank and norm of the final state per shot");
  auto *sample = app.add_subcommand("sample", "sample the evolved state of a circuit");
  sample->add_option("circuit", file, "circuit JSON")->required();
  sample->add_option("--kind", kind, "continuous, discrete or homodyne");
  sample->add_option("--modes", modes, "comma-separated mode list (default: all)");
  auto *prob = app.add_subcommand("prob", "Fock outcome probability of the evolved state");
  prob->add_option("circuit", file, "circuit JSON")->required();
  prob->add_option("--outcome", outcome, "comma-separated photon numbers")->required();
  prob->add_option("--modes", modes, "comma-separated mode list (default: all)");
  auto *rank = app.add_subcommand("rank", "stellar rank of the evolved state");
  rank->add_option("circuit", file, "circuit JSON")->required();
  auto *schmidt = app.add_subcommand("schmidt", "Schmidt form across a bipartition");
  schmidt->add_option("circuit", file, "circuit JSON")->required();
  schmidt->add_option("--partition", partition, "comma-separated modes of side I");
  auto *decompose = app.add_subcommand("decompose", "core state and Gaussian program");
  decompose->add_option("circuit", file, "circuit JSON")->required();
  auto *cmtrace = app.add_subcommand("cm-trace", "zero or Calogero-Moser trajectory as CSV");
  cmtrace->add_option("file", file, "trajectory JSON")->required();
  auto *evolve = app.add_subcommand("evolve", "single-mode gate evolution by a chosen route");
  evolve->add_option("file", file, "trajectory JSON")->required();
  evolve->add_option("--route", route, "closed, direct or ode");
  evolve->add_option("--dt", dt, "ODE step (default 1e-4 |t|)");
  auto *table3 = app.add_subcommand("table3", "dual-route architecture checks");
  table3->add_option("--arch", arch, "architecture name or all");
  table3->add_option("--modes", t3modes, "mode count");
  table3->add_option("--photons", t3photons, "photon count");
  auto *perm = app.add_subcommand("perm", "matrix permanent");
  perm->add_option("matrix", matrix, "JSON matrix or file")->required();
  perm->add_flag("--parallel", parallel, "use the OpenMP kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }
  if (g.threads > 0) omp_set_num_threads(g.threads);

  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (*run) code = cmd_run(g, file, final);
    else if (*sample) code = cmd_sample(g, file, kind, modes);
    else if (*prob) code = cmd_prob(g, file, outcome, modes);
    else if (*rank) code = cmd_rank(g, file);
    else if (*schmidt) code = cmd_schmidt(g, file, partition);
    else if (*decompose) code = cmd_decompose(g, file);
    else if (*cmtrace) code = cmd_cm_trace(g, file);
    else if (*evolve) code = cmd_evolve(g, file, route, dt);
    else if (*table3) code = cmd_table3(g, arch, t3modes, t3photons);
    else if (*perm) code = cmd_perm(g, matrix, parallel);
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError &e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "hqc: elapsed "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
            << " s\n";
  return code;
}

}  // namespace hqc
