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

#ifndef NULLVALUE_SWEEP_H_
#define NULLVALUE_SWEEP_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nullvalue/statistics.h"

namespace nullvalue {

enum class SweepMode { kAnalytic, kMonteCarlo };

/// SNR versus delta in the laboratory gauge for the standard scheme and the
/// two null-value schemes.
struct SweepOptions {
  double delta_min = 0.0;
  double delta_max = 0.2;
  int steps = 41;
  double delta_m = 0.1;
  double p = 0.15;
  double n_total = 11250.0;
  bool include_std = true;
  bool include_a = true;
  bool include_b = true;
  SweepMode mode = SweepMode::kAnalytic;
  std::uint64_t seed = 0;
  NoiseModel noise = NoiseModel::kPoissonized;
  double eta = kDefaultEta;

  /// Throws InvalidArgument with a readable reason.
  void validate() const;
};

struct SweepRow {
  double delta = 0.0;
  /// Empty when the estimator is undefined at this delta.
  std::optional<SnrReport> standard;
  std::optional<SnrReport> scheme_a;
  std::optional<SnrReport> scheme_b;
};

struct SweepResult {
  SweepOptions options;
  std::vector<SweepRow> rows;
  /// Number of (row, scheme) cells skipped as undefined.
  int undefined_cells = 0;
};

SweepResult run_snr_sweep(const SweepOptions& options);

/// Column names in output order for the selected schemes. The full set is
/// delta,snr_std,snr_nv_A,snr_nv_B,signal_nv_A,noise_nv_A,signal_nv_B,
/// noise_nv_B,signal_std,noise_std.
std::vector<std::string> sweep_columns(const SweepOptions& options);

/// CSV body: header then one row per delta; undefined cells print "nan".
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// JSON array of objects keyed by the same column names; undefined cells are
/// null.
void write_sweep_json(std::ostream& out, const SweepResult& result);

}  // namespace nullvalue

#endif  // NULLVALUE_SWEEP_H_
