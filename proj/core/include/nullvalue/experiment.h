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

#ifndef NULLVALUE_EXPERIMENT_H_
#define NULLVALUE_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nullvalue/null_value.h"
#include "nullvalue/qubit.h"
#include "nullvalue/random.h"
#include "nullvalue/statistics.h"

namespace nullvalue {

/// Optical path of the polarization experiment. Photons are prepared by a
/// polarizer, partially reflected by a glass window (vertical component
/// only), and the transmitted light is postselected by a second polarizer.
struct ExperimentConfig {
  double p_front = 0.15;
  double p_back = 0.067;
  double eta_w = 1.0;
  double eta_p = 1.0;
  /// Mean dark counts per bin per detector.
  double dark_rate = 0.0;
  int bin_count = 200;
  /// Prepared photons per measurement, split evenly across the bins. Zero is
  /// accepted for background-only runs.
  std::uint64_t photons_per_measurement = 11250;
  /// Retardance applied to the transmitted vertical amplitude.
  double ellipticity_phase = 0.0;
  double delta_m = 0.1;

  /// Names of every field that violates its range; empty when valid.
  std::vector<std::string> invalid_fields() const;
  /// Throws InvalidArgument listing all invalid fields.
  void validate() const;
};

/// Parses the JSON document form. Missing keys keep their defaults; unknown
/// keys and wrongly typed values are rejected. Throws InvalidArgument.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

/// cos(delta - delta_m)|0> + sin(delta - delta_m)|1>
PureState prepare_input(double delta, const ExperimentConfig& cfg);

/// Exact outcome probabilities for one photon meeting the window.
struct WindowProbabilities {
  double reflected_front = 0.0;
  double reflected_back = 0.0;
  double transmitted = 0.0;
  /// Transmitted state with both faces' back-action and the retardance;
  /// empty when nothing is transmitted.
  std::optional<PureState> post_state;
};

WindowProbabilities window_probabilities(const PureState& state, const ExperimentConfig& cfg);

enum class WindowEvent { kReflectedFront, kReflectedBack, kTransmitted };

struct WindowOutcome {
  WindowEvent event = WindowEvent::kTransmitted;
  std::optional<PureState> post_state;
};

/// Samples one photon's fate at the window.
WindowOutcome window_interaction(const PureState& state, const ExperimentConfig& cfg,
                                 CounterRng& rng);

/// Scheme for the window arrangement: M = |1>, p = p_front, reference is the
/// delta = 0 input. The experiment functions below take only the
/// postselection from a SchemeConfig; the window itself comes from the
/// ExperimentConfig.
SchemeConfig experiment_scheme(const ExperimentConfig& cfg, Postselection postselection);

enum class Arrangement {
  kNullValue,  // channels D_W and D_P
  kStandard,   // channel D_N behind a polarizer orthogonal to the reference
};

/// Expected counts per measurement (all bins), dark counts included.
struct ChannelMeans {
  double d_w = 0.0;
  double d_p = 0.0;
  double d_n = 0.0;
};

ChannelMeans expected_channel_means(const ExperimentConfig& cfg, const SchemeConfig& scheme,
                                    double delta);
ChannelMeans expected_standard_means(const ExperimentConfig& cfg, double delta);

struct BinnedCounts {
  Arrangement arrangement = Arrangement::kNullValue;
  double delta = 0.0;
  std::uint64_t photons = 0;
  /// Mean dark counts per bin per detector, used for subtraction.
  double dark_per_bin = 0.0;
  std::vector<std::uint64_t> d_w;
  std::vector<std::uint64_t> d_p;
  std::vector<std::uint64_t> d_n;

  std::size_t bins() const;
  /// Channel accessors by name: "D_W", "D_P", "D_N".
  const std::vector<std::uint64_t>& channel(const std::string& name) const;
  std::vector<std::string> channel_names() const;
  double total(const std::string& name) const;
  double mean(const std::string& name) const;
  /// Unbiased sample variance across bins; zero for fewer than two bins.
  double variance(const std::string& name) const;
};

struct ExperimentRun {
  BinnedCounts reference;  // delta = 0
  std::vector<BinnedCounts> per_delta;
};

/// Null-value arrangement. Each photon is drawn from its own counter-based
/// stream, so results do not depend on evaluation order.
ExperimentRun run_experiment(const ExperimentConfig& cfg, const SchemeConfig& scheme,
                             const std::vector<double>& deltas, std::uint64_t seed);

/// Standard arrangement: single detector D_N with efficiency eta_p.
ExperimentRun run_standard_experiment(const ExperimentConfig& cfg,
                                      const std::vector<double>& deltas, std::uint64_t seed);

struct BinnedSnr {
  SnrReport report;
  CountRecord delta_record;
  CountRecord reference_record;
  /// Set when some channel had zero empirical variance and var = n was used.
  bool poisson_fallback = false;
};

/// Dark-subtracted totals with empirical per-bin variances scaled to the
/// totals. Throws NumericalDegeneracy(kInsufficientData) with fewer than two
/// bins, InvalidArgument when the arrangements differ.
BinnedSnr estimate_snr_from_bins(const BinnedCounts& bins_delta, const BinnedCounts& bins_0,
                                 double eta = kDefaultEta);

/// SNR from expected counts with Poisson variances.
SnrReport theory_snr(const ExperimentConfig& cfg, const SchemeConfig& scheme, double delta,
                     double eta = kDefaultEta);
SnrReport theory_standard_snr(const ExperimentConfig& cfg, double delta, double eta = kDefaultEta);

struct EllipticityFit {
  double zeta = 0.0;
  double sum_sq = 0.0;
  std::vector<double> grid;
  std::vector<double> residual;  // sum of squares per grid point
};

/// Grid search for the retardance minimizing the squared distance between
/// theory SNR and the observed points. Undefined theory points are skipped.
EllipticityFit fit_ellipticity(const ExperimentConfig& cfg, const Postselection& postselection,
                               const std::vector<double>& deltas,
                               const std::vector<double>& observed_snr,
                               const std::vector<double>& zeta_grid);

/// Rows of delta,channel,bin,count, optionally preceded by that header.
void write_binned_csv(std::ostream& out, const BinnedCounts& counts, bool header = true);

}  // namespace nullvalue

#endif  // NULLVALUE_EXPERIMENT_H_
