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

#include "nullvalue/statistics.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nullvalue/errors.h"
#include "nullvalue/measurement.h"
#include "nullvalue/random.h"

namespace nullvalue {
namespace {

void check_same_total(const CountRecord& a, const CountRecord& b) {
  if (a.n_total != b.n_total) {
    throw InvalidArgument("count records come from different numbers of copies");
  }
}

SnrReport finish_report(double signal, double noise, double eta) {
  SnrReport r;
  r.signal = signal;
  r.noise = noise;
  r.decision_threshold = z_critical(eta);
  if (signal == 0.0) {
    r.snr = 0.0;
  } else if (!(noise > 0.0) || !std::isfinite(noise)) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kUndefinedSnr,
                              "SNR undefined: zero noise with a nonzero signal");
  } else {
    r.snr = signal / noise;
  }
  r.decided = r.snr > r.decision_threshold;
  return r;
}

double conditional_ratio(const CountRecord& r) {
  const double denom = r.n_w + r.n_p;
  if (!(denom > 0.0)) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kUndefinedConditional,
                              "n_w + n_p = 0: conditional estimator undefined");
  }
  return r.n_w / denom;
}

// Acklam's rational approximation, relative error < 1.2e-9 before refinement.
double acklam(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - kLow) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

CountRecord analytic_counts(const PureState& psi, const SchemeConfig& cfg, double n_total) {
  const auto leaves = scheme_tree(psi, cfg).leaves();
  CountRecord r;
  r.n_total = n_total;
  r.n_w = n_total * leaves[0];
  r.n_s = n_total * leaves[1];
  r.n_p = n_total * leaves[2];
  r.var_w = r.n_w;
  r.var_s = r.n_s;
  r.var_p = r.n_p;
  return r;
}

double signal_std(const CountRecord& rec_delta, const CountRecord& rec_0) {
  check_same_total(rec_delta, rec_0);
  return std::abs(rec_delta.n_s - rec_0.n_s);
}

SnrReport snr_std(const CountRecord& rec_delta, const CountRecord& rec_0, double eta) {
  const double signal = signal_std(rec_delta, rec_0);
  if (!(rec_delta.n_s + rec_0.n_s > 0.0)) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kUndefinedSnr,
                              "snr_std: no standard detections in either record");
  }
  return finish_report(signal, std::sqrt(rec_delta.var_s + rec_0.var_s), eta);
}

double signal_nv(const CountRecord& rec_delta, const CountRecord& rec_0) {
  check_same_total(rec_delta, rec_0);
  return rec_delta.n_total * std::abs(conditional_ratio(rec_delta) - conditional_ratio(rec_0));
}

std::array<double, 4> signal_nv_gradient(const CountRecord& rec_delta,
                                         const CountRecord& rec_0) {
  check_same_total(rec_delta, rec_0);
  const double diff = conditional_ratio(rec_delta) - conditional_ratio(rec_0);
  const double sign = diff >= 0.0 ? 1.0 : -1.0;
  const double n = rec_delta.n_total;
  // d/dN_w [N_w/(N_w+N_p)] = 1/(N_w+N_p) - N_w/(N_w+N_p)^2
  // d/dN_p [N_w/(N_w+N_p)] = -N_w/(N_w+N_p)^2
  auto partials = [](const CountRecord& r) {
    const double t = r.n_w + r.n_p;
    return std::array<double, 2>{1.0 / t - r.n_w / (t * t), -r.n_w / (t * t)};
  };
  const auto d = partials(rec_delta);
  const auto z = partials(rec_0);
  return {n * sign * d[0], n * sign * d[1], -n * sign * z[0], -n * sign * z[1]};
}

double noise_nv(const CountRecord& rec_delta, const CountRecord& rec_0) {
  const auto g = signal_nv_gradient(rec_delta, rec_0);
  return std::sqrt(g[0] * g[0] * rec_delta.var_w + g[1] * g[1] * rec_delta.var_p +
                   g[2] * g[2] * rec_0.var_w + g[3] * g[3] * rec_0.var_p);
}

SnrReport snr_nv(const CountRecord& rec_delta, const CountRecord& rec_0, double eta) {
  const double signal = signal_nv(rec_delta, rec_0);
  return finish_report(signal, noise_nv(rec_delta, rec_0), eta);
}

double snr_nv_asymptotic(double delta, double delta_m, double p, double n_total) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgument("snr_nv_asymptotic: p must lie in (0, 1]");
  }
  const double s = std::sin(delta);
  return s * s / (std::sin(delta_m + delta) * std::sqrt(p)) * std::sqrt(n_total);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double inverse_normal_cdf(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw InvalidArgument("inverse_normal_cdf: probability must lie in (0, 1)");
  }
  double x = acklam(prob);
  // One Halley step brings the rational approximation to full precision.
  const double e = normal_cdf(x) - prob;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double z_critical(double eta) {
  if (!(eta > 0.0 && eta < 0.5)) {
    throw InvalidArgument("z_critical: eta must lie in (0, 0.5)");
  }
  // Upper quantile via symmetry avoids the cancellation in 1 - eta.
  return -inverse_normal_cdf(eta);
}

CountRecord simulate_counts(const PureState& psi, const SchemeConfig& cfg, std::uint64_t n_total,
                            std::uint64_t seed, const SimulationOptions& options) {
  const auto leaves = scheme_tree(psi, cfg).leaves();
  const std::uint64_t bins = options.bins >= 2 ? static_cast<std::uint64_t>(options.bins) : 1;
  std::vector<std::array<double, 3>> per_bin(bins, {0.0, 0.0, 0.0});

  std::uint64_t trial = 0;
  for (std::uint64_t b = 0; b < bins; ++b) {
    const std::uint64_t in_bin = n_total / bins + (b < n_total % bins ? 1 : 0);
    if (options.model == NoiseModel::kBinomial) {
      const std::uint64_t stream = stream_key(StreamId::kTreeTrials, options.stream);
      for (std::uint64_t k = 0; k < in_bin; ++k, ++trial) {
        const double u = CounterRng(seed, stream, trial).uniform();
        const int leaf = u < leaves[0] ? 0 : (u < leaves[0] + leaves[1] ? 1 : 2);
        per_bin[b][static_cast<std::size_t>(leaf)] += 1.0;
      }
    } else {
      const std::uint64_t stream = stream_key(StreamId::kPoissonLeaves, options.stream);
      for (std::size_t leaf = 0; leaf < 3; ++leaf) {
        const double mean = static_cast<double>(in_bin) * leaves[leaf];
        if (!(mean > 0.0)) continue;
        CounterRng rng(seed, stream, b * 3 + leaf);
        std::poisson_distribution<std::int64_t> draw(mean);
        per_bin[b][leaf] = static_cast<double>(draw(rng));
      }
    }
  }

  std::array<double, 3> total{0.0, 0.0, 0.0};
  for (const auto& row : per_bin) {
    for (std::size_t l = 0; l < 3; ++l) total[l] += row[l];
  }
  std::array<double, 3> var = total;
  if (bins >= 2) {
    const double nb = static_cast<double>(bins);
    for (std::size_t l = 0; l < 3; ++l) {
      const double mean = total[l] / nb;
      double ss = 0.0;
      for (const auto& row : per_bin) ss += (row[l] - mean) * (row[l] - mean);
      var[l] = nb * ss / (nb - 1.0);
    }
  }
  CountRecord r;
  r.n_total = static_cast<double>(n_total);
  r.n_w = total[0];
  r.n_s = total[1];
  r.n_p = total[2];
  r.var_w = var[0];
  r.var_s = var[1];
  r.var_p = var[2];
  return r;
}

}  // namespace nullvalue
