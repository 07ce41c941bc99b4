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

#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "nullvalue/errors.h"
#include "test_util.h"

using namespace nullvalue;
using nullvalue::testing::kPi;

namespace {

ExperimentConfig ideal() {
  ExperimentConfig cfg;
  cfg.p_back = 0.0;
  cfg.eta_w = cfg.eta_p = 1.0;
  cfg.dark_rate = 0.0;
  cfg.ellipticity_phase = 0.0;
  return cfg;
}

BinnedCounts synthetic(std::vector<std::uint64_t> w, std::vector<std::uint64_t> p,
                       std::uint64_t photons) {
  BinnedCounts b;
  b.arrangement = Arrangement::kNullValue;
  b.photons = photons;
  b.d_w = std::move(w);
  b.d_p = std::move(p);
  return b;
}

BinnedCounts poisson_bins(std::mt19937_64& rng, double mean_w, double mean_p, int bins,
                          std::uint64_t photons) {
  std::poisson_distribution<std::uint64_t> w(mean_w), p(mean_p);
  std::vector<std::uint64_t> dw, dp;
  for (int b = 0; b < bins; ++b) {
    dw.push_back(w(rng));
    dp.push_back(p(rng));
  }
  return synthetic(dw, dp, photons);
}

}  // namespace

TEST(experiment, prepare_input_examples) {
  ExperimentConfig cfg;
  const PureState h = prepare_input(cfg.delta_m, cfg);
  EXPECT_NEAR(std::abs(h.a0() - 1.0), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(h.a1()), 0.0, 1e-16);
  const PureState z = prepare_input(0.0, cfg);
  EXPECT_NEAR(z.a0().real(), std::cos(-0.1), 1e-16);
  EXPECT_NEAR(z.a1().real(), std::sin(-0.1), 1e-16);
  const PureState v = prepare_input(cfg.delta_m + kPi / 2, cfg);
  EXPECT_NEAR(std::abs(v.a1()), 1.0, 1e-15);
}

TEST(experiment, window_examples) {
  ExperimentConfig cfg;
  cfg.p_front = 0.15;
  const WindowProbabilities h = window_probabilities(PureState::zero(), cfg);
  EXPECT_EQ(h.transmitted, 1.0);
  EXPECT_NEAR(overlap_probability(*h.post_state, PureState::zero()), 1.0, 1e-16);
  const WindowProbabilities v = window_probabilities(PureState::one(), cfg);
  EXPECT_NEAR(v.reflected_front, 0.15, 1e-16);
  EXPECT_NEAR(v.reflected_back, 0.85 * cfg.p_back, 1e-16);
  EXPECT_NEAR(v.reflected_front + v.reflected_back + v.transmitted, 1.0, 1e-15);
  cfg.p_front = 1.0;
  EXPECT_FALSE(window_probabilities(PureState::one(), cfg).post_state.has_value());
}

TEST(experiment, window_reduces_to_tree) {
  const ExperimentConfig cfg = ideal();
  for (Postselection post : {Postselection{SchemeA{}}, Postselection{SchemeB{}}}) {
    const SchemeConfig scheme = experiment_scheme(cfg, post);
    for (double d : {0.0, 0.03, 0.1, 0.7}) {
      const auto leaves = scheme_tree(prepare_input(d, cfg), scheme).leaves();
      const ChannelMeans m = expected_channel_means(cfg, scheme, d);
      const double n = static_cast<double>(cfg.photons_per_measurement);
      EXPECT_NEAR(m.d_w / n, leaves[0], 1e-15);
      EXPECT_NEAR(m.d_p / n, leaves[2] <= 1e-24 ? 0.0 : leaves[2], 1e-15);
    }
  }
}

TEST(experiment, window_interaction_frequencies) {
  ExperimentConfig cfg;
  const PureState psi = prepare_input(0.4, cfg);
  const WindowProbabilities w = window_probabilities(psi, cfg);
  int front = 0, back = 0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    CounterRng rng(5, 0, static_cast<std::uint64_t>(k));
    const WindowOutcome o = window_interaction(psi, cfg, rng);
    if (o.event == WindowEvent::kReflectedFront) ++front;
    if (o.event == WindowEvent::kReflectedBack) ++back;
    if (o.event == WindowEvent::kTransmitted) {
      ASSERT_NEAR(overlap_probability(*o.post_state, *w.post_state), 1.0, 1e-15);
    }
  }
  EXPECT_NEAR(front, n * w.reflected_front, 4 * std::sqrt(n * w.reflected_front));
  EXPECT_NEAR(back, n * w.reflected_back, 4 * std::sqrt(n * w.reflected_back));
}

TEST(experiment, retardance_rotates_vertical_phase) {
  ExperimentConfig cfg = ideal();
  cfg.ellipticity_phase = 0.3;
  const PureState psi = prepare_input(0.5, cfg);
  const PureState out = *window_probabilities(psi, cfg).post_state;
  EXPECT_NEAR(std::arg(out.a1() / out.a0()), 0.3, 1e-14);
}

TEST(experiment, ideal_limit_matches_tree) {
  ExperimentConfig cfg = ideal();
  cfg.photons_per_measurement = 1000000;
  cfg.bin_count = 10;
  const SchemeConfig scheme = experiment_scheme(cfg, SchemeA{});
  const std::vector<double> deltas = {0.05, 0.2};
  const ExperimentRun run = run_experiment(cfg, scheme, deltas, 17);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const auto leaves = scheme_tree(prepare_input(deltas[k], cfg), scheme).leaves();
    const double n = 1e6;
    const BinnedCounts& b = run.per_delta[k];
    EXPECT_NEAR(b.total("D_W"), n * leaves[0], 4 * std::sqrt(n * leaves[0] * (1 - leaves[0])));
    EXPECT_NEAR(b.total("D_P"), n * leaves[2], 4 * std::sqrt(n * leaves[2] * (1 - leaves[2])));
  }
}

TEST(experiment, background_only) {
  ExperimentConfig cfg = ideal();
  cfg.photons_per_measurement = 0;
  cfg.dark_rate = 5.0;
  cfg.bin_count = 200;
  const ExperimentRun run = run_experiment(cfg, experiment_scheme(cfg, SchemeA{}), {0.05}, 3);
  const double expect = 5.0 * 200;
  for (const std::string ch : {"D_W", "D_P"}) {
    EXPECT_NEAR(run.per_delta[0].total(ch), expect, 4 * std::sqrt(expect));
  }
}

TEST(experiment, common_loss_leaves_conditional_unchanged) {
  ExperimentConfig cfg;
  const SchemeConfig scheme = experiment_scheme(cfg, SchemeA{});
  const ChannelMeans full = expected_channel_means(cfg, scheme, 0.15);
  ExperimentConfig lossy = cfg;
  lossy.eta_w = lossy.eta_p = 0.4;
  const ChannelMeans part = expected_channel_means(lossy, scheme, 0.15);
  EXPECT_NEAR(full.d_w / (full.d_w + full.d_p), part.d_w / (part.d_w + part.d_p), 1e-14);

  lossy.photons_per_measurement = 2000000;
  const BinnedCounts b = run_experiment(lossy, scheme, {0.15}, 8).per_delta[0];
  const double r = b.total("D_W") / (b.total("D_W") + b.total("D_P"));
  const double t = b.total("D_W") + b.total("D_P");
  const double expect = full.d_w / (full.d_w + full.d_p);
  EXPECT_NEAR(r, expect, 4 * std::sqrt(expect * (1 - expect) / t));
}

TEST(experiment, dark_subtraction) {
  ExperimentConfig cfg;
  cfg.photons_per_measurement = 2000000;
  const SchemeConfig scheme = experiment_scheme(cfg, SchemeA{});
  const double d = 0.15;
  const ChannelMeans m = expected_channel_means(cfg, scheme, d);
  const ExperimentRun clean = run_experiment(cfg, scheme, {d}, 21);
  ExperimentConfig noisy = cfg;
  noisy.dark_rate = 0.01 * std::min(m.d_w, m.d_p) / cfg.bin_count;
  const ExperimentRun dirty = run_experiment(noisy, scheme, {d}, 21);
  const double a = estimate_snr_from_bins(clean.per_delta[0], clean.reference).report.snr;
  const double b = estimate_snr_from_bins(dirty.per_delta[0], dirty.reference).report.snr;
  EXPECT_NEAR(b / a, 1.0, 0.02);
}

TEST(experiment, dark_estimator_unbiased) {
  std::mt19937_64 rng(4);
  const double r = 3.0;
  BinnedCounts b = poisson_bins(rng, 40 + r, 60 + r, 400, 100000);
  b.dark_per_bin = r;
  BinnedCounts z = poisson_bins(rng, 50 + r, 50 + r, 400, 100000);
  z.dark_per_bin = r;
  const BinnedSnr s = estimate_snr_from_bins(b, z);
  EXPECT_NEAR(s.delta_record.n_w, 40 * 400, 4 * std::sqrt(43 * 400.0));
  EXPECT_NEAR(s.delta_record.n_p, 60 * 400, 4 * std::sqrt(63 * 400.0));
}

TEST(experiment, estimator_needs_two_bins) {
  const BinnedCounts one = synthetic({5}, {5}, 100);
  try {
    estimate_snr_from_bins(one, one);
    FAIL();
  } catch (const NumericalDegeneracy& e) {
    EXPECT_EQ(e.kind(), NumericalDegeneracy::Kind::kInsufficientData);
  }
  BinnedCounts s;
  s.arrangement = Arrangement::kStandard;
  s.d_n = {1, 2};
  EXPECT_THROW(estimate_snr_from_bins(synthetic({1, 2}, {1, 2}, 10), s), InvalidArgument);
}

TEST(experiment, zero_variance_falls_back_to_poisson) {
  const BinnedSnr s =
      estimate_snr_from_bins(synthetic({5, 5, 5}, {7, 7, 7}, 90), synthetic({9, 9, 9}, {2, 2, 2}, 90));
  EXPECT_TRUE(s.poisson_fallback);
  EXPECT_EQ(s.delta_record.var_w, 15.0);
  EXPECT_EQ(s.reference_record.var_p, 6.0);
}

TEST(experiment, empirical_snr_matches_poisson_formula) {
  std::mt19937_64 rng(9);
  const BinnedCounts d = poisson_bins(rng, 30, 70, 200, 50000);
  const BinnedCounts z = poisson_bins(rng, 45, 55, 200, 50000);
  const BinnedSnr s = estimate_snr_from_bins(d, z);
  EXPECT_FALSE(s.poisson_fallback);
  CountRecord pd = s.delta_record, pz = s.reference_record;
  pd.var_w = pd.n_w;
  pd.var_p = pd.n_p;
  pz.var_w = pz.n_w;
  pz.var_p = pz.n_p;
  EXPECT_NEAR(s.report.snr / snr_nv(pd, pz).snr, 1.0, 0.1);
}

TEST(experiment, determinism) {
  ExperimentConfig cfg;
  cfg.dark_rate = 0.5;
  const SchemeConfig scheme = experiment_scheme(cfg, SchemeB{});
  const ExperimentRun a = run_experiment(cfg, scheme, {0.02, 0.08}, 5);
  const ExperimentRun b = run_experiment(cfg, scheme, {0.02, 0.08}, 5);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(a.per_delta[k].d_w, b.per_delta[k].d_w);
    EXPECT_EQ(a.per_delta[k].d_p, b.per_delta[k].d_p);
  }
  const ExperimentRun s1 = run_standard_experiment(cfg, {0.02}, 5);
  const ExperimentRun s2 = run_standard_experiment(cfg, {0.02}, 5);
  EXPECT_EQ(s1.per_delta[0].d_n, s2.per_delta[0].d_n);
  EXPECT_NE(run_experiment(cfg, scheme, {0.02, 0.08}, 6).per_delta[0].d_w, a.per_delta[0].d_w);
}

TEST(experiment, binned_counts_invariants) {
  ExperimentConfig cfg;
  cfg.photons_per_measurement = 11251;
  cfg.bin_count = 7;
  const ExperimentRun run = run_standard_experiment(cfg, {0.1}, 2);
  const BinnedCounts& b = run.per_delta[0];
  EXPECT_EQ(b.bins(), 7u);
  double sum = 0;
  for (auto c : b.d_n) sum += static_cast<double>(c);
  EXPECT_EQ(b.total("D_N"), sum);
  EXPECT_GE(b.variance("D_N"), 0.0);
  EXPECT_EQ(b.channel_names(), std::vector<std::string>{"D_N"});
  EXPECT_THROW(b.channel("D_X"), InvalidArgument);
}

TEST(experiment, standard_arrangement_means) {
  ExperimentConfig cfg;
  cfg.eta_p = 0.5;
  cfg.dark_rate = 0.1;
  const ChannelMeans m = expected_standard_means(cfg, 0.05);
  EXPECT_NEAR(m.d_n, 11250 * 0.5 * std::sin(0.05) * std::sin(0.05) + 0.1 * cfg.bin_count, 1e-9);
}

TEST(experiment, theory_ordering_at_default_config) {
  const ExperimentConfig cfg;
  const SchemeConfig a = experiment_scheme(cfg, SchemeA{});
  const SchemeConfig b = experiment_scheme(cfg, SchemeB{});
  EXPECT_GT(theory_snr(cfg, a, 0.02).snr, theory_standard_snr(cfg, 0.02).snr);
  EXPECT_GT(theory_snr(cfg, b, 0.08).snr, theory_snr(cfg, a, 0.08).snr);
}

TEST(experiment, fit_recovers_retardance) {
  ExperimentConfig cfg;
  cfg.ellipticity_phase = 0.04;
  const std::vector<double> deltas = {0.02, 0.05, 0.08, 0.12, 0.18};
  std::vector<double> observed;
  for (double d : deltas) {
    observed.push_back(theory_snr(cfg, experiment_scheme(cfg, SchemeA{}), d).snr);
  }
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(0.01 * k);
  const EllipticityFit fit = fit_ellipticity(cfg, SchemeA{}, deltas, observed, grid);
  EXPECT_NEAR(fit.zeta, 0.04, 1e-12);
  EXPECT_NEAR(fit.sum_sq, 0.0, 1e-12);
  EXPECT_EQ(fit.residual.size(), grid.size());
  EXPECT_THROW(fit_ellipticity(cfg, SchemeA{}, deltas, {1.0}, grid), InvalidArgument);
}

TEST(experiment, config_json_round_trip) {
  ExperimentConfig cfg;
  cfg.eta_w = 0.7;
  cfg.bin_count = 33;
  const ExperimentConfig back = parse_experiment_config(experiment_config_to_json(cfg));
  EXPECT_EQ(back.eta_w, 0.7);
  EXPECT_EQ(back.bin_count, 33);
  EXPECT_EQ(back.photons_per_measurement, 11250u);
  const ExperimentConfig partial = parse_experiment_config(R"({"p_front": 0.2})");
  EXPECT_EQ(partial.p_front, 0.2);
  EXPECT_EQ(partial.p_back, ExperimentConfig{}.p_back);
}

TEST(experiment, config_json_rejections) {
  auto message = [](const std::string& text) {
    try {
      parse_experiment_config(text);
    } catch (const InvalidArgument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"eta_w": 2.0})").find("eta_w"), std::string::npos);
  const std::string both = message(R"({"eta_w": 2.0, "p_back": -1, "bin_count": 0})");
  EXPECT_NE(both.find("eta_w"), std::string::npos);
  EXPECT_NE(both.find("p_back"), std::string::npos);
  EXPECT_NE(both.find("bin_count"), std::string::npos);
  EXPECT_NE(message(R"({"pfront": 0.1})").find("pfront"), std::string::npos);
  EXPECT_NE(message(R"({"dark_rate": "low"})").find("dark_rate"), std::string::npos);
  EXPECT_NE(message(R"({"photons_per_measurement": 1.5})").find("photons_per_measurement"),
            std::string::npos);
  EXPECT_FALSE(message("[1, 2]").empty());
  EXPECT_FALSE(message("{not json").empty());
}

TEST(experiment, binned_csv_rows) {
  BinnedCounts b = synthetic({1, 2}, {3, 4}, 10);
  b.delta = 0.05;
  std::ostringstream out;
  write_binned_csv(out, b);
  EXPECT_EQ(out.str(),
            "delta,channel,bin,count\n0.05,D_W,0,1\n0.05,D_W,1,2\n0.05,D_P,0,3\n0.05,D_P,1,4\n");
}
