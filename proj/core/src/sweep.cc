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

#include "nullvalue/sweep.h"

#include <cmath>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "nullvalue/errors.h"
#include "nullvalue/format.h"
#include "nullvalue/random.h"

namespace nullvalue {
namespace {

enum Scheme : std::uint64_t { kStd = 0, kA = 1, kB = 2 };

PureState lab_input(double delta, double delta_m) {
  return PureState::from_amplitudes(std::cos(delta - delta_m), std::sin(delta - delta_m));
}

std::optional<double> column_value(const SweepRow& row, const std::string& column) {
  auto pick = [](const std::optional<SnrReport>& r,
                 double SnrReport::*field) -> std::optional<double> {
    if (!r) return std::nullopt;
    return (*r).*field;
  };
  if (column == "delta") return row.delta;
  if (column == "snr_std") return pick(row.standard, &SnrReport::snr);
  if (column == "signal_std") return pick(row.standard, &SnrReport::signal);
  if (column == "noise_std") return pick(row.standard, &SnrReport::noise);
  if (column == "snr_nv_A") return pick(row.scheme_a, &SnrReport::snr);
  if (column == "signal_nv_A") return pick(row.scheme_a, &SnrReport::signal);
  if (column == "noise_nv_A") return pick(row.scheme_a, &SnrReport::noise);
  if (column == "snr_nv_B") return pick(row.scheme_b, &SnrReport::snr);
  if (column == "signal_nv_B") return pick(row.scheme_b, &SnrReport::signal);
  if (column == "noise_nv_B") return pick(row.scheme_b, &SnrReport::noise);
  return std::nullopt;
}

}  // namespace

void SweepOptions::validate() const {
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
  if (!std::isfinite(delta_min) || !std::isfinite(delta_max) || delta_max < delta_min) {
    throw InvalidArgument("delta range must be finite with delta_max >= delta_min");
  }
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p must lie in (0, 1)");
  if (!(n_total >= 1.0) || !std::isfinite(n_total)) throw InvalidArgument("n must be >= 1");
  if (!std::isfinite(delta_m)) throw InvalidArgument("delta_m must be finite");
  if (!include_std && !include_a && !include_b) throw InvalidArgument("no scheme selected");
  if (!(eta > 0.0 && eta < 0.5)) throw InvalidArgument("eta must lie in (0, 0.5)");
}

std::vector<std::string> sweep_columns(const SweepOptions& o) {
  std::vector<std::string> cols{"delta"};
  if (o.include_std) cols.push_back("snr_std");
  if (o.include_a) cols.push_back("snr_nv_A");
  if (o.include_b) cols.push_back("snr_nv_B");
  if (o.include_a) {
    cols.push_back("signal_nv_A");
    cols.push_back("noise_nv_A");
  }
  if (o.include_b) {
    cols.push_back("signal_nv_B");
    cols.push_back("noise_nv_B");
  }
  if (o.include_std) {
    cols.push_back("signal_std");
    cols.push_back("noise_std");
  }
  return cols;
}

SweepResult run_snr_sweep(const SweepOptions& o) {
  o.validate();
  SweepResult result;
  result.options = o;

  const SchemeConfig a = lab_scheme(o.delta_m, o.p, SchemeA{});
  const SchemeConfig b = lab_scheme(o.delta_m, o.p, SchemeB{});
  const SchemeConfig std_cfg =
      standard_scheme(standard_orientation(a.reference), a.reference);
  const std::uint64_t n_copies = static_cast<std::uint64_t>(std::llround(o.n_total));

  // Stream index = (row + 1) * 4 + scheme; row -1 holds the reference runs.
  auto counts = [&](const PureState& psi, const SchemeConfig& cfg, int row, Scheme s) {
    if (o.mode == SweepMode::kAnalytic) return analytic_counts(psi, cfg, o.n_total);
    SimulationOptions sim;
    sim.model = o.noise;
    sim.stream = stream_key(StreamId::kSweep,
                            static_cast<std::uint64_t>(row + 1) * 4 + static_cast<std::uint64_t>(s));
    return simulate_counts(psi, cfg, n_copies, o.seed, sim);
  };
  auto evaluate = [&](const std::function<SnrReport()>& f) -> std::optional<SnrReport> {
    try {
      return f();
    } catch (const NumericalDegeneracy&) {
      ++result.undefined_cells;
      return std::nullopt;
    }
  };

  const CountRecord ref_std = counts(a.reference, std_cfg, -1, kStd);
  const CountRecord ref_a = counts(a.reference, a, -1, kA);
  const CountRecord ref_b = counts(b.reference, b, -1, kB);

  for (int k = 0; k < o.steps; ++k) {
    SweepRow row;
    row.delta = o.steps == 1 ? o.delta_min
                             : o.delta_min + (o.delta_max - o.delta_min) * k / (o.steps - 1);
    const PureState psi = lab_input(row.delta, o.delta_m);
    if (o.include_std) {
      row.standard = evaluate([&] { return snr_std(counts(psi, std_cfg, k, kStd), ref_std, o.eta); });
    }
    if (o.include_a) {
      row.scheme_a = evaluate([&] { return snr_nv(counts(psi, a, k, kA), ref_a, o.eta); });
    }
    if (o.include_b) {
      row.scheme_b = evaluate([&] { return snr_nv(counts(psi, b, k, kB), ref_b, o.eta); });
    }
    result.rows.push_back(row);
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  const auto cols = sweep_columns(result.options);
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const SweepRow& row : result.rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto v = column_value(row, cols[c]);
      out << (c ? "," : "") << (v ? format_number(*v) : std::string("nan"));
    }
    out << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepResult& result) {
  const auto cols = sweep_columns(result.options);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SweepRow& row : result.rows) {
    nlohmann::ordered_json obj;
    for (const auto& c : cols) {
      const auto v = column_value(row, c);
      if (v && std::isfinite(*v)) {
        obj[c] = std::stod(format_number(*v));
      } else {
        obj[c] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

}  // namespace nullvalue
