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

#ifndef NULLVALUE_STATISTICS_H_
#define NULLVALUE_STATISTICS_H_

#include <array>
#include <cstdint>

#include "nullvalue/null_value.h"
#include "nullvalue/qubit.h"

namespace nullvalue {

/// Counts from N prepared copies. Fractional values are allowed so expected
/// ("analytic") counts share the type with simulated ones.
///
///   n_w  first-measurement clicks (D_W)
///   n_s  second-measurement clicks (absorbed at P2); for a standard scheme
///        these are the standard detections
///   n_p  no click at either step (D_P)
struct CountRecord {
  double n_total = 0.0;
  double n_w = 0.0;
  double n_p = 0.0;
  double n_s = 0.0;
  double var_w = 0.0;
  double var_p = 0.0;
  double var_s = 0.0;
};

/// N times each leaf probability; variances follow the Poisson rule var = n.
CountRecord analytic_counts(const PureState& psi, const SchemeConfig& cfg, double n_total);

inline constexpr double kDefaultEta = 0.05;

struct SnrReport {
  double signal = 0.0;
  double noise = 0.0;
  double snr = 0.0;
  double decision_threshold = 0.0;  // z_{1-eta}
  bool decided = false;             // snr > decision_threshold
};

/// |N_s,delta - N_s,0|. Throws InvalidArgument when the records disagree on N.
double signal_std(const CountRecord& rec_delta, const CountRecord& rec_0);

/// noise = sqrt(var_s,delta + var_s,0). Throws NumericalDegeneracy
/// (kUndefinedSnr) when the noise vanishes with a nonzero signal.
SnrReport snr_std(const CountRecord& rec_delta, const CountRecord& rec_0,
                  double eta = kDefaultEta);

/// N |n_w,d/(n_w,d + n_p,d) - n_w,0/(n_w,0 + n_p,0)|. Throws
/// NumericalDegeneracy (kUndefinedConditional) if either denominator is 0.
double signal_nv(const CountRecord& rec_delta, const CountRecord& rec_0);

/// dS/d(n_w,delta), dS/d(n_p,delta), dS/d(n_w,0), dS/d(n_p,0) with N held fixed.
std::array<double, 4> signal_nv_gradient(const CountRecord& rec_delta, const CountRecord& rec_0);

/// Error propagation through signal_nv using each record's variances.
double noise_nv(const CountRecord& rec_delta, const CountRecord& rec_0);

SnrReport snr_nv(const CountRecord& rec_delta, const CountRecord& rec_0,
                 double eta = kDefaultEta);

/// sin^2(delta) / (sin(delta_m + delta) sqrt(p)) * sqrt(N). A scaling form
/// only: the true SNR is proportional to it, not equal. Throws for p <= 0.
double snr_nv_asymptotic(double delta, double delta_m, double p, double n_total);

/// Standard normal CDF.
double normal_cdf(double z);

/// Inverse of normal_cdf on (0, 1).
double inverse_normal_cdf(double prob);

/// z with normal_cdf(z) = 1 - eta. Throws InvalidArgument unless 0 < eta < 0.5.
double z_critical(double eta);

enum class NoiseModel {
  kBinomial,     // N independent passes through the three-leaf tree
  kPoissonized,  // independent Poisson leaf counts with means N P_leaf
};

struct SimulationOptions {
  NoiseModel model = NoiseModel::kPoissonized;
  /// With bins >= 2 the copies are split into bins and variances are the
  /// empirical per-bin variances scaled to the totals. Otherwise var = n.
  int bins = 1;
  /// Sub-stream so several records can be drawn from one seed independently.
  std::uint64_t stream = 0;
};

/// Monte Carlo realization of the measurement tree. Deterministic in
/// (psi, cfg, n_total, seed, options).
CountRecord simulate_counts(const PureState& psi, const SchemeConfig& cfg, std::uint64_t n_total,
                            std::uint64_t seed, const SimulationOptions& options = {});

}  // namespace nullvalue

#endif  // NULLVALUE_STATISTICS_H_
