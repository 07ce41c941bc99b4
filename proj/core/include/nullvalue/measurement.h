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

#ifndef NULLVALUE_MEASUREMENT_H_
#define NULLVALUE_MEASUREMENT_H_

#include <array>
#include <optional>

#include "nullvalue/qubit.h"

namespace nullvalue {

/// Partial-collapse measurement along |M>. A "click" removes the system;
/// the null outcome applies k0.
///
///   k1 = sqrt(p0)   |M̄><M̄| + sqrt(p1)   |M><M|
///   k0 = sqrt(1-p0) |M̄><M̄| + sqrt(1-p1) |M><M|
struct KrausPair {
  PureState m;
  double p0;
  double p1;
  Operator2 k1;
  Operator2 k0;

  /// max |k1†k1 + k0†k0 - I|
  double completeness_defect() const;
};

/// Throws InvalidArgument unless p0, p1 are in [0, 1].
KrausPair make_kraus(const PureState& m, double p0, double p1);

/// Three outcomes of partial collapse followed by projective postselection.
enum class PovmOutcome {
  kFirstClick,    // Π1: detector D_W
  kSecondClick,   // Π2: absorbed by P2
  kInconclusive,  // Π?: detector D_P
};

struct PovmTriple {
  Operator2 pi1;
  Operator2 pi2;
  Operator2 pi_inconclusive;

  const Operator2& element(PovmOutcome outcome) const;
  double completeness_defect() const;
  /// All three Hermitian with eigenvalues >= -tol.
  bool is_positive(double tol = kTolerance.algebraic) const;
};

/// Π1 = k1†k1, Π2 = k0†|f><f|k0, Π? = k0†|f̄><f̄|k0.
PovmTriple make_povm(const KrausPair& kraus, const PureState& psi_f);

/// Which detector registers each POVM outcome (1 = click).
struct DetectorPattern {
  bool d_w;
  bool p2;
  bool d_p;
};

DetectorPattern detector_pattern(PovmOutcome outcome);

inline constexpr std::array<PovmOutcome, 3> kPovmOutcomes = {
    PovmOutcome::kFirstClick, PovmOutcome::kSecondClick,
    PovmOutcome::kInconclusive};

/// Sequential view of the same measurement. A first click destroys the
/// system, so there is no (click, click) leaf: the tree has exactly three.
struct TreeProbabilities {
  double p_w = 0.0;
  double p_s_given_no_w = 0.0;
  double p_no_s_given_no_w = 0.0;
  /// k0|psi> / ||k0|psi>||; empty when the state is fully absorbed.
  std::optional<PureState> post_state;

  bool degenerate() const { return !post_state.has_value(); }

  /// Joint leaf probabilities indexed like kPovmOutcomes.
  std::array<double, 3> leaves() const;
  double leaf(PovmOutcome outcome) const;
};

TreeProbabilities tree_probabilities(const PureState& psi, const KrausPair& kraus,
                                     const PureState& psi_f);

}  // namespace nullvalue

#endif  // NULLVALUE_MEASUREMENT_H_
