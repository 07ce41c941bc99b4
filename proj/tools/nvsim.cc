// Copyright 2026 The nullvalue Authors
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

#include "nvsim.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "nullvalue/errors.h"
#include "nullvalue/experiment.h"
#include "nullvalue/format.h"
#include "nullvalue/measurement.h"
#include "nullvalue/single_copy.h"
#include "nullvalue/sweep.h"

namespace nvsim {
namespace {

using Json = nlohmann::ordered_json;
using nullvalue::format_number;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kDegree = std::numbers::pi / 180.0;

// Numbers are stored through their 9-digit rendering so that manifests and
// summaries print the same digits as the CSV files.
Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw UsageError("failed writing " + path.string());
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
  if (seed) return *seed;
  if (std::getenv("CI") != nullptr) {
    throw UsageError("--seed is required when CI is set");
  }
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  err << "seed " << s << '\n';
  return s;
}

struct Manifest {
  explicit Manifest(std::string name) : command(std::move(name)) {}

  std::string command;
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string dump() const {
    Json doc;
    doc["command"] = command;
    doc["parameters"] = parameters;
    doc["seed"] = seed ? Json(*seed) : Json(nullptr);
    doc["version"] = version();
    doc["outputs"] = outputs;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    doc["wall_clock_seconds"] = secs;
    return doc.dump(2) + "\n";
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--delta-list: cannot parse '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
      throw UsageError("--delta-list: cannot parse '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--delta-list is empty");
  return out;
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream s;
  s << format_number(z.real()) << (std::signbit(z.imag()) ? "-" : "+")
    << format_number(std::abs(z.imag())) << "i";
  return s.str();
}

void print_matrix(std::ostream& out, const std::string& name, const nullvalue::Operator2& op) {
  out << name << " =\n";
  for (int r = 0; r < 2; ++r) {
    out << "  [ " << complex_text(op(r, 0)) << ", " << complex_text(op(r, 1)) << " ]\n";
  }
}

// ---- sweep-snr -------------------------------------------------------------

struct SweepArgs {
  nullvalue::SweepOptions options;
  std::string scheme = "all";
  std::string mode = "analytic";
  std::string noise = "poissonized";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::string out;
  bool degrees = false;
};

void add_sweep(CLI::App& app, SweepArgs& a) {
  auto* c = app.add_subcommand("sweep-snr", "SNR versus delta for the standard and null-value schemes");
  c->add_option("--delta-min", a.options.delta_min, "first delta (rad)")->capture_default_str();
  c->add_option("--delta-max", a.options.delta_max, "last delta (rad)")->capture_default_str();
  c->add_option("--steps", a.options.steps, "number of delta values")->capture_default_str();
  c->add_option("--delta-m", a.options.delta_m, "offset Delta_M (rad)")->capture_default_str();
  c->add_option("--p", a.options.p, "collapse probability")->capture_default_str();
  c->add_option("--n", a.options.n_total, "copies per measurement")->capture_default_str();
  c->add_option("--scheme", a.scheme, "std|A|B|all")
      ->check(CLI::IsMember({"std", "A", "B", "all"}))
      ->capture_default_str();
  c->add_option("--mode", a.mode, "analytic|mc")
      ->check(CLI::IsMember({"analytic", "mc"}))
      ->capture_default_str();
  c->add_option("--noise", a.noise, "Monte Carlo noise model: poissonized|binomial")
      ->check(CLI::IsMember({"poissonized", "binomial"}))
      ->capture_default_str();
  c->add_option("--eta", a.options.eta, "false-alarm level for the decision flag")
      ->capture_default_str();
  c->add_option("--seed", a.seed, "RNG seed (mc mode)");
  c->add_option("--format", a.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  c->add_option("--out", a.out, "output file (default: standard output)");
  c->add_flag("--degrees", a.degrees, "angles given in degrees");
}

int cmd_sweep(SweepArgs& a, std::ostream& out, std::ostream& err) {
  Manifest manifest{"sweep-snr"};
  nullvalue::SweepOptions& o = a.options;
  if (a.degrees) {
    o.delta_min *= kDegree;
    o.delta_max *= kDegree;
    o.delta_m *= kDegree;
  }
  o.include_std = a.scheme == "std" || a.scheme == "all";
  o.include_a = a.scheme == "A" || a.scheme == "all";
  o.include_b = a.scheme == "B" || a.scheme == "all";
  o.mode = a.mode == "mc" ? nullvalue::SweepMode::kMonteCarlo : nullvalue::SweepMode::kAnalytic;
  o.noise = a.noise == "binomial" ? nullvalue::NoiseModel::kBinomial
                                  : nullvalue::NoiseModel::kPoissonized;
  if (o.mode == nullvalue::SweepMode::kMonteCarlo) {
    if (o.n_total != std::floor(o.n_total)) throw UsageError("--n must be an integer in mc mode");
    o.seed = resolve_seed(a.seed, err);
    manifest.seed = o.seed;
  }
  o.validate();

  const nullvalue::SweepResult result = nullvalue::run_snr_sweep(o);
  std::ostringstream body;
  if (a.format == "json") {
    nullvalue::write_sweep_json(body, result);
  } else {
    nullvalue::write_sweep_csv(body, result);
  }
  if (result.undefined_cells > 0) {
    err << result.undefined_cells << " undefined SNR cells written as "
        << (a.format == "json" ? "null" : "nan") << '\n';
  }

  manifest.parameters = {{"delta_min", number(o.delta_min)}, {"delta_max", number(o.delta_max)},
                         {"steps", o.steps},
                         {"delta_m", number(o.delta_m)},
                         {"p", number(o.p)},
                         {"n", number(o.n_total)},
                         {"scheme", a.scheme},
                         {"mode", a.mode},
                         {"noise", a.noise},
                         {"eta", number(o.eta)},
                         {"format", a.format}};
  if (a.out.empty()) {
    out << body.str();
  } else {
    write_file(a.out, body.str());
    manifest.outputs = {a.out};
    write_file(a.out + ".manifest.json", manifest.dump());
  }
  return kOk;
}

// ---- optimize --------------------------------------------------------------

struct OptimizeArgs {
  double cap_delta = 0.0;
  double p = 0.0;
  double phi_f = 0.0;
  int grid = 101;
  std::string out;
  bool degrees = false;
};

void add_optimize(CLI::App& app, OptimizeArgs& a) {
  auto* c = app.add_subcommand("optimize", "contour of the cap-averaged error over (theta_M, theta_f)");
  c->add_option("--cap-delta", a.cap_delta, "cap half-angle Delta (rad), 0 < Delta <= pi/2")
      ->required();
  c->add_option("--p", a.p, "collapse probability")->required();
  c->add_option("--phi-f", a.phi_f, "postselection azimuth (rad)")->capture_default_str();
  c->add_option("--grid", a.grid, "points per axis, >= 32")->capture_default_str();
  c->add_option("--out", a.out, "contour CSV (default: standard output)");
  c->add_flag("--degrees", a.degrees, "angles given in degrees");
}

int cmd_optimize(OptimizeArgs& a, std::ostream& out, std::ostream& err) {
  Manifest manifest{"optimize"};
  if (a.degrees) {
    a.cap_delta *= kDegree;
    a.phi_f *= kDegree;
  }
  if (a.grid < 32) throw UsageError("--grid must be at least 32");
  if (!(a.p >= 0.0 && a.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
  if (!std::isfinite(a.phi_f)) throw UsageError("--phi-f must be finite");
  const nullvalue::CapPrior cap(a.cap_delta);
  const nullvalue::OrientationOptimum o =
      nullvalue::optimize_orientations(a.p, cap, a.phi_f, {a.grid, a.grid});

  std::ostringstream summary;
  summary << "argmin theta_M=" << format_number(o.theta_m)
          << " theta_f=" << format_number(o.theta_f) << " p_err=" << format_number(o.p_err)
          << " refined_theta_M=" << format_number(o.refined_theta_m)
          << " refined_theta_f=" << format_number(o.refined_theta_f)
          << " refined_p_err=" << format_number(o.refined_p_err) << '\n';
  std::ostringstream csv;
  nullvalue::write_contour_csv(csv, o);

  manifest.parameters = {{"cap_delta", number(a.cap_delta)}, {"p", number(a.p)},
                         {"phi_f", number(a.phi_f)},        {"grid", a.grid}};
  if (a.out.empty()) {
    out << csv.str();
    err << summary.str();
  } else {
    write_file(a.out, csv.str());
    manifest.outputs = {a.out};
    write_file(a.out + ".manifest.json", manifest.dump());
    out << summary.str();
  }
  return kOk;
}

// ---- simulate-experiment ---------------------------------------------------

struct ExperimentArgs {
  std::string config;
  std::string scheme = "B";
  std::string delta_list;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool degrees = false;
};

void add_experiment(CLI::App& app, ExperimentArgs& a) {
  auto* c = app.add_subcommand("simulate-experiment",
                               "photon-level simulation of the window and polarizer setup");
  c->add_option("--config", a.config, "ExperimentConfig JSON (default: built-in values)");
  c->add_option("--scheme", a.scheme, "A|B|std")
      ->check(CLI::IsMember({"A", "B", "std"}))
      ->capture_default_str();
  c->add_option("--delta-list", a.delta_list, "comma-separated delta values (rad)")->required();
  c->add_option("--seed", a.seed, "RNG seed");
  c->add_option("--out-dir", a.out_dir, "directory for CSV, summary and manifest")->required();
  c->add_flag("--degrees", a.degrees, "angles given in degrees");
}

Json channel_summary(const nullvalue::BinnedCounts& b) {
  Json ch = Json::object();
  for (const std::string& name : b.channel_names()) {
    ch[name] = {{"total", number(b.total(name))},
                {"mean", number(b.mean(name))},
                {"variance", number(b.variance(name))}};
  }
  return ch;
}

int cmd_experiment(ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  Manifest manifest{"simulate-experiment"};
  nullvalue::ExperimentConfig cfg;
  if (!a.config.empty()) cfg = nullvalue::load_experiment_config(a.config);
  cfg.validate();
  std::vector<double> deltas = parse_list(a.delta_list);
  if (a.degrees) {
    for (double& d : deltas) d *= kDegree;
  }
  const std::uint64_t seed = resolve_seed(a.seed, err);
  manifest.seed = seed;

  const bool standard = a.scheme == "std";
  std::optional<nullvalue::SchemeConfig> scheme;
  nullvalue::ExperimentRun run;
  if (standard) {
    run = nullvalue::run_standard_experiment(cfg, deltas, seed);
  } else {
    scheme = nullvalue::experiment_scheme(
        cfg, a.scheme == "A" ? nullvalue::Postselection{nullvalue::SchemeA{}}
                             : nullvalue::Postselection{nullvalue::SchemeB{}});
    run = nullvalue::run_experiment(cfg, *scheme, deltas, seed);
  }

  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create " + dir.string() + ": " + ec.message());

  auto csv_of = [](const nullvalue::BinnedCounts& b) {
    std::ostringstream s;
    nullvalue::write_binned_csv(s, b);
    return s.str();
  };
  const fs::path ref_path = dir / "counts_reference.csv";
  write_file(ref_path, csv_of(run.reference));
  manifest.outputs.push_back(ref_path.string());

  Json rows = Json::array();
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    std::ostringstream name;
    name << "counts_delta_" << std::setw(3) << std::setfill('0') << k << ".csv";
    const fs::path path = dir / name.str();
    write_file(path, csv_of(run.per_delta[k]));
    manifest.outputs.push_back(path.string());

    Json row;
    row["delta"] = number(deltas[k]);
    row["file"] = name.str();
    row["channels"] = channel_summary(run.per_delta[k]);
    try {
      const nullvalue::BinnedSnr s =
          nullvalue::estimate_snr_from_bins(run.per_delta[k], run.reference);
      row["snr"] = {{"signal", number(s.report.signal)},
                    {"noise", number(s.report.noise)},
                    {"snr", number(s.report.snr)},
                    {"decided", s.report.decided},
                    {"poisson_fallback", s.poisson_fallback}};
    } catch (const nullvalue::NumericalDegeneracy& e) {
      row["snr"] = nullptr;
      row["snr_note"] = e.what();
    }
    try {
      row["snr_theory"] = number(standard ? nullvalue::theory_standard_snr(cfg, deltas[k]).snr
                                          : nullvalue::theory_snr(cfg, *scheme, deltas[k]).snr);
    } catch (const nullvalue::NumericalDegeneracy&) {
      row["snr_theory"] = nullptr;
    }
    rows.push_back(std::move(row));
  }

  Json summary;
  summary["scheme"] = a.scheme;
  summary["seed"] = seed;
  summary["config"] = Json::parse(nullvalue::experiment_config_to_json(cfg));
  summary["reference"] = {{"delta", 0.0}, {"channels", channel_summary(run.reference)}};
  summary["rows"] = std::move(rows);
  const fs::path summary_path = dir / "summary.json";
  write_file(summary_path, summary.dump(2) + "\n");
  manifest.outputs.push_back(summary_path.string());

  manifest.parameters = {{"config", a.config.empty() ? Json(nullptr) : Json(a.config)},
                         {"resolved_config", summary["config"]},
                         {"scheme", a.scheme},
                         {"deltas", Json::array()}};
  for (double d : deltas) manifest.parameters["deltas"].push_back(number(d));
  write_file(dir / "manifest.json", manifest.dump());
  out << "wrote " << manifest.outputs.size() << " files to " << dir.string() << '\n';
  return kOk;
}

// ---- povm-check ------------------------------------------------------------

struct PovmArgs {
  double theta_m = 0.0;
  double phi_m = 0.0;
  double p = 0.0;
  double p0 = 0.0;
  double theta_f = 0.0;
  double phi_f = 0.0;
  bool degrees = false;
};

void add_povm(CLI::App& app, PovmArgs& a) {
  auto* c = app.add_subcommand("povm-check", "print the three POVM elements and the detector table");
  c->add_option("--theta-m", a.theta_m, "measurement angle theta_M (rad)")->required();
  c->add_option("--phi-m", a.phi_m, "measurement azimuth (rad)")->capture_default_str();
  c->add_option("--p", a.p, "click probability of |M>")->required();
  c->add_option("--p0", a.p0, "click probability of the orthogonal state")->capture_default_str();
  c->add_option("--theta-f", a.theta_f, "postselection angle theta_f (rad)")->required();
  c->add_option("--phi-f", a.phi_f, "postselection azimuth (rad)")->capture_default_str();
  c->add_flag("--degrees", a.degrees, "angles given in degrees");
}

int cmd_povm(PovmArgs& a, std::ostream& out, std::ostream&) {
  if (a.degrees) {
    a.theta_m *= kDegree;
    a.phi_m *= kDegree;
    a.theta_f *= kDegree;
    a.phi_f *= kDegree;
  }
  for (double x : {a.theta_m, a.phi_m, a.theta_f, a.phi_f}) {
    if (!std::isfinite(x)) throw UsageError("angles must be finite");
  }
  const nullvalue::KrausPair kraus =
      nullvalue::make_kraus(nullvalue::state_from_angles({a.theta_m, a.phi_m}), a.p0, a.p);
  const nullvalue::PovmTriple povm =
      nullvalue::make_povm(kraus, nullvalue::state_from_angles({a.theta_f, a.phi_f}));
  print_matrix(out, "Pi_1", povm.pi1);
  print_matrix(out, "Pi_2", povm.pi2);
  print_matrix(out, "Pi_?", povm.pi_inconclusive);
  out << "completeness_defect " << format_number(povm.completeness_defect()) << '\n';
  out << "positive " << (povm.is_positive() ? "yes" : "no") << '\n';
  out << "outcome  D_W  P2  D_P\n";
  const char* names[] = {"Pi_1", "Pi_2", "Pi_?"};
  for (std::size_t k = 0; k < nullvalue::kPovmOutcomes.size(); ++k) {
    const nullvalue::DetectorPattern d = nullvalue::detector_pattern(nullvalue::kPovmOutcomes[k]);
    out << std::left << std::setw(9) << names[k] << std::setw(5) << (d.d_w ? "1" : "0")
        << std::setw(4) << (d.p2 ? "1" : "0") << (d.d_p ? "1" : "0") << '\n';
  }
  return kOk;
}

}  // namespace

std::string version() { return NVSIM_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Null-value state discrimination: sweeps, optimization and simulation", "nvsim"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  SweepArgs sweep;
  OptimizeArgs optimize;
  ExperimentArgs experiment;
  PovmArgs povm;
  add_sweep(app, sweep);
  add_optimize(app, optimize);
  add_experiment(app, experiment);
  add_povm(app, povm);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "nvsim: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (app.got_subcommand("sweep-snr")) return cmd_sweep(sweep, out, err);
    if (app.got_subcommand("optimize")) return cmd_optimize(optimize, out, err);
    if (app.got_subcommand("simulate-experiment")) return cmd_experiment(experiment, out, err);
    if (app.got_subcommand("povm-check")) return cmd_povm(povm, out, err);
  } catch (const UsageError& e) {
    err << "nvsim: " << e.what() << '\n';
    return kUsage;
  } catch (const nullvalue::InvalidArgument& e) {
    err << "nvsim: " << e.what() << '\n';
    return kUsage;
  } catch (const nullvalue::NumericalDegeneracy& e) {
    err << "nvsim: numerical degeneracy: " << e.what() << '\n';
    return kDegenerate;
  }
  err << "nvsim: no command\n";
  return kUsage;
}

}  // namespace nvsim
