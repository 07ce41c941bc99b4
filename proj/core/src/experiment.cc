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

#include "nullvalue/experiment.h"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "nullvalue/errors.h"
#include "nullvalue/format.h"

namespace nullvalue {
namespace {

constexpr std::array<const char*, 3> kChannelNames = {"D_W", "D_P", "D_N"};

// Photon fates in the null-value arrangement, in sampling order.
enum Fate : int {
  kDetectedW = 0,
  kMissedW,
  kBackReflected,
  kAbsorbedP2,
  kDetectedP,
  kMissedP,
  kFateCount,
};

std::array<double, kFateCount> fate_probabilities(const ExperimentConfig& cfg,
                                                  const PureState& psi_f, double delta) {
  const WindowProbabilities w = window_probabilities(prepare_input(delta, cfg), cfg);
  const double pass =
      w.post_state ? overlap_probability(orthogonal_complement(psi_f), *w.post_state) : 0.0;
  std::array<double, kFateCount> f{};
  f[kDetectedW] = cfg.eta_w * w.reflected_front;
  f[kMissedW] = (1.0 - cfg.eta_w) * w.reflected_front;
  f[kBackReflected] = w.reflected_back;
  f[kAbsorbedP2] = w.transmitted * (1.0 - pass);
  f[kDetectedP] = cfg.eta_p * w.transmitted * pass;
  f[kMissedP] = (1.0 - cfg.eta_p) * w.transmitted * pass;
  for (double& x : f) {
    if (x <= kTolerance.orthogonality) x = 0.0;
  }
  return f;
}

std::uint64_t photons_in_bin(const ExperimentConfig& cfg, std::size_t bin) {
  const std::uint64_t bins = static_cast<std::uint64_t>(cfg.bin_count);
  const std::uint64_t n = cfg.photons_per_measurement;
  return n / bins + (bin < n % bins ? 1 : 0);
}

std::uint64_t dark_draw(const ExperimentConfig& cfg, std::uint64_t seed, std::uint64_t run_stream,
                        int channel, std::size_t bin) {
  if (!(cfg.dark_rate > 0.0)) return 0;
  CounterRng rng(seed, stream_key(StreamId::kDarkCounts, run_stream * 4 + channel), bin);
  std::poisson_distribution<std::uint64_t> draw(cfg.dark_rate);
  return draw(rng);
}

BinnedCounts empty_counts(const ExperimentConfig& cfg, Arrangement arrangement, double delta) {
  BinnedCounts out;
  out.arrangement = arrangement;
  out.delta = delta;
  out.photons = cfg.photons_per_measurement;
  out.dark_per_bin = cfg.dark_rate;
  const std::size_t bins = static_cast<std::size_t>(cfg.bin_count);
  if (arrangement == Arrangement::kNullValue) {
    out.d_w.assign(bins, 0);
    out.d_p.assign(bins, 0);
  } else {
    out.d_n.assign(bins, 0);
  }
  return out;
}

// run_stream: bit 0 is the arrangement, the rest the run index (0 = reference).
BinnedCounts simulate_nv(const ExperimentConfig& cfg, const PureState& psi_f, double delta,
                         std::uint64_t seed, std::uint64_t run_stream) {
  BinnedCounts out = empty_counts(cfg, Arrangement::kNullValue, delta);
  const auto fate = fate_probabilities(cfg, psi_f, delta);
  std::array<double, kFateCount> cumulative{};
  double acc = 0.0;
  for (int k = 0; k < kFateCount; ++k) cumulative[k] = acc += fate[k];

  const std::uint64_t stream = stream_key(StreamId::kPhotons, run_stream);
  std::uint64_t photon = 0;
  for (std::size_t b = 0; b < out.bins(); ++b) {
    const std::uint64_t n = photons_in_bin(cfg, b);
    for (std::uint64_t k = 0; k < n; ++k, ++photon) {
      const double u = CounterRng(seed, stream, photon).uniform() * acc;
      if (u < cumulative[kDetectedW]) {
        ++out.d_w[b];
      } else if (u >= cumulative[kAbsorbedP2] && u < cumulative[kDetectedP]) {
        ++out.d_p[b];
      }
    }
    out.d_w[b] += dark_draw(cfg, seed, run_stream, 0, b);
    out.d_p[b] += dark_draw(cfg, seed, run_stream, 1, b);
  }
  return out;
}

BinnedCounts simulate_std(const ExperimentConfig& cfg, const PureState& m_std, double delta,
                          std::uint64_t seed, std::uint64_t run_stream) {
  BinnedCounts out = empty_counts(cfg, Arrangement::kStandard, delta);
  const double p_click = cfg.eta_p * overlap_probability(m_std, prepare_input(delta, cfg));
  const std::uint64_t stream = stream_key(StreamId::kPhotons, run_stream);
  std::uint64_t photon = 0;
  for (std::size_t b = 0; b < out.bins(); ++b) {
    const std::uint64_t n = photons_in_bin(cfg, b);
    for (std::uint64_t k = 0; k < n; ++k, ++photon) {
      if (CounterRng(seed, stream, photon).uniform() < p_click) ++out.d_n[b];
    }
    out.d_n[b] += dark_draw(cfg, seed, run_stream, 2, b);
  }
  return out;
}

PureState standard_polarizer(const ExperimentConfig& cfg) {
  return standard_orientation(prepare_input(0.0, cfg));
}

}  // namespace

PureState prepare_input(double delta, const ExperimentConfig& cfg) {
  return PureState::from_amplitudes(std::cos(delta - cfg.delta_m), std::sin(delta - cfg.delta_m));
}

WindowProbabilities window_probabilities(const PureState& state, const ExperimentConfig& cfg) {
  const double h = std::norm(state.a0());
  const double v = std::norm(state.a1());
  WindowProbabilities out;
  out.reflected_front = cfg.p_front * v;
  out.reflected_back = cfg.p_back * (1.0 - cfg.p_front) * v;
  const double v_left = (1.0 - cfg.p_back) * (1.0 - cfg.p_front) * v;
  out.transmitted = h + v_left;
  if (out.transmitted > kTolerance.degenerate_norm) {
    const Complex a1 = std::sqrt((1.0 - cfg.p_back) * (1.0 - cfg.p_front)) * state.a1() *
                       std::polar(1.0, cfg.ellipticity_phase);
    out.post_state = PureState::from_amplitudes(state.a0(), a1);
  }
  return out;
}

WindowOutcome window_interaction(const PureState& state, const ExperimentConfig& cfg,
                                 CounterRng& rng) {
  const WindowProbabilities w = window_probabilities(state, cfg);
  const double u = rng.uniform();
  WindowOutcome out;
  if (u < w.reflected_front) {
    out.event = WindowEvent::kReflectedFront;
  } else if (u < w.reflected_front + w.reflected_back || !w.post_state) {
    out.event = WindowEvent::kReflectedBack;
  } else {
    out.event = WindowEvent::kTransmitted;
    out.post_state = w.post_state;
  }
  return out;
}

SchemeConfig experiment_scheme(const ExperimentConfig& cfg, Postselection postselection) {
  return lab_scheme(cfg.delta_m, cfg.p_front, std::move(postselection));
}

ChannelMeans expected_channel_means(const ExperimentConfig& cfg, const SchemeConfig& scheme,
                                    double delta) {
  const auto fate = fate_probabilities(cfg, resolve_postselection(scheme), delta);
  const double n = static_cast<double>(cfg.photons_per_measurement);
  const double dark = cfg.dark_rate * cfg.bin_count;
  ChannelMeans out;
  out.d_w = n * fate[kDetectedW] + dark;
  out.d_p = n * fate[kDetectedP] + dark;
  return out;
}

ChannelMeans expected_standard_means(const ExperimentConfig& cfg, double delta) {
  ChannelMeans out;
  out.d_n = static_cast<double>(cfg.photons_per_measurement) * cfg.eta_p *
                overlap_probability(standard_polarizer(cfg), prepare_input(delta, cfg)) +
            cfg.dark_rate * cfg.bin_count;
  return out;
}

std::size_t BinnedCounts::bins() const {
  return arrangement == Arrangement::kNullValue ? d_w.size() : d_n.size();
}

const std::vector<std::uint64_t>& BinnedCounts::channel(const std::string& name) const {
  if (name == kChannelNames[0]) return d_w;
  if (name == kChannelNames[1]) return d_p;
  if (name == kChannelNames[2]) return d_n;
  throw InvalidArgument("unknown channel " + name);
}

std::vector<std::string> BinnedCounts::channel_names() const {
  if (arrangement == Arrangement::kNullValue) return {kChannelNames[0], kChannelNames[1]};
  return {kChannelNames[2]};
}

double BinnedCounts::total(const std::string& name) const {
  double t = 0.0;
  for (std::uint64_t c : channel(name)) t += static_cast<double>(c);
  return t;
}

double BinnedCounts::mean(const std::string& name) const {
  const auto& c = channel(name);
  return c.empty() ? 0.0 : total(name) / static_cast<double>(c.size());
}

double BinnedCounts::variance(const std::string& name) const {
  const auto& c = channel(name);
  if (c.size() < 2) return 0.0;
  const double m = mean(name);
  double ss = 0.0;
  for (std::uint64_t x : c) ss += (static_cast<double>(x) - m) * (static_cast<double>(x) - m);
  return ss / static_cast<double>(c.size() - 1);
}

ExperimentRun run_experiment(const ExperimentConfig& cfg, const SchemeConfig& scheme,
                             const std::vector<double>& deltas, std::uint64_t seed) {
  cfg.validate();
  const PureState psi_f = resolve_postselection(scheme);
  ExperimentRun run;
  run.reference = simulate_nv(cfg, psi_f, 0.0, seed, 0);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    run.per_delta.push_back(simulate_nv(cfg, psi_f, deltas[k], seed, (k + 1) << 1));
  }
  return run;
}

ExperimentRun run_standard_experiment(const ExperimentConfig& cfg,
                                      const std::vector<double>& deltas, std::uint64_t seed) {
  cfg.validate();
  const PureState m_std = standard_polarizer(cfg);
  ExperimentRun run;
  run.reference = simulate_std(cfg, m_std, 0.0, seed, 1);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    run.per_delta.push_back(simulate_std(cfg, m_std, deltas[k], seed, ((k + 1) << 1) | 1));
  }
  return run;
}

BinnedSnr estimate_snr_from_bins(const BinnedCounts& bins_delta, const BinnedCounts& bins_0,
                                 double eta) {
  if (bins_delta.arrangement != bins_0.arrangement) {
    throw InvalidArgument("binned counts come from different arrangements");
  }
  if (bins_delta.bins() < 2 || bins_0.bins() < 2) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kInsufficientData,
                              "at least two bins are needed to estimate variances");
  }
  BinnedSnr out;
  auto fill = [&out](const BinnedCounts& b, double& n, double& var, const std::string& name) {
    const double nb = static_cast<double>(b.bins());
    n = b.total(name) - b.dark_per_bin * nb;
    const double v = b.variance(name);
    if (v > 0.0) {
      var = nb * v;
    } else {
      var = std::max(n, 0.0);
      out.poisson_fallback = true;
    }
  };
  auto record = [&](const BinnedCounts& b) {
    CountRecord r;
    r.n_total = static_cast<double>(b.photons);
    if (b.arrangement == Arrangement::kNullValue) {
      fill(b, r.n_w, r.var_w, "D_W");
      fill(b, r.n_p, r.var_p, "D_P");
    } else {
      fill(b, r.n_s, r.var_s, "D_N");
    }
    return r;
  };
  out.delta_record = record(bins_delta);
  out.reference_record = record(bins_0);
  out.report = bins_delta.arrangement == Arrangement::kNullValue
                   ? snr_nv(out.delta_record, out.reference_record, eta)
                   : snr_std(out.delta_record, out.reference_record, eta);
  return out;
}

SnrReport theory_snr(const ExperimentConfig& cfg, const SchemeConfig& scheme, double delta,
                     double eta) {
  cfg.validate();
  const PureState psi_f = resolve_postselection(scheme);
  const double n = static_cast<double>(cfg.photons_per_measurement);
  auto record = [&](double d) {
    const auto fate = fate_probabilities(cfg, psi_f, d);
    CountRecord r;
    r.n_total = n;
    r.n_w = r.var_w = n * fate[kDetectedW];
    r.n_p = r.var_p = n * fate[kDetectedP];
    return r;
  };
  return snr_nv(record(delta), record(0.0), eta);
}

SnrReport theory_standard_snr(const ExperimentConfig& cfg, double delta, double eta) {
  cfg.validate();
  const PureState m_std = standard_polarizer(cfg);
  const double n = static_cast<double>(cfg.photons_per_measurement);
  auto record = [&](double d) {
    CountRecord r;
    r.n_total = n;
    r.n_s = r.var_s = n * cfg.eta_p * overlap_probability(m_std, prepare_input(d, cfg));
    return r;
  };
  return snr_std(record(delta), record(0.0), eta);
}

EllipticityFit fit_ellipticity(const ExperimentConfig& cfg, const Postselection& postselection,
                               const std::vector<double>& deltas,
                               const std::vector<double>& observed_snr,
                               const std::vector<double>& zeta_grid) {
  if (deltas.size() != observed_snr.size() || deltas.empty()) {
    throw InvalidArgument("deltas and observed SNR must be nonempty and of equal length");
  }
  if (zeta_grid.empty()) throw InvalidArgument("empty retardance grid");
  EllipticityFit fit;
  fit.grid = zeta_grid;
  fit.sum_sq = std::numeric_limits<double>::infinity();
  for (double zeta : zeta_grid) {
    ExperimentConfig trial = cfg;
    trial.ellipticity_phase = zeta;
    const SchemeConfig scheme = experiment_scheme(trial, postselection);
    double ss = 0.0;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      try {
        const double r = theory_snr(trial, scheme, deltas[k]).snr - observed_snr[k];
        ss += r * r;
      } catch (const NumericalDegeneracy&) {
      }
    }
    fit.residual.push_back(ss);
    if (ss < fit.sum_sq) {
      fit.sum_sq = ss;
      fit.zeta = zeta;
    }
  }
  return fit;
}

void write_binned_csv(std::ostream& out, const BinnedCounts& counts, bool header) {
  if (header) out << "delta,channel,bin,count\n";
  const std::string delta = format_number(counts.delta);
  for (const std::string& name : counts.channel_names()) {
    const auto& c = counts.channel(name);
    for (std::size_t b = 0; b < c.size(); ++b) {
      out << delta << ',' << name << ',' << b << ',' << c[b] << '\n';
    }
  }
}

}  // namespace nullvalue
