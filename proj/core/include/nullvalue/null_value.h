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

#ifndef NULLVALUE_NULL_VALUE_H_
#define NULLVALUE_NULL_VALUE_H_

#include <variant>

#include "nullvalue/measurement.h"
#include "nullvalue/qubit.h"

namespace nullvalue {

/// Postselection tuned so the reference would always click at the second
/// measurement without partial collapse: |<f̄|psi0>|^2 = 0.
struct SchemeA {};
/// Postselection tuned on the back-action-rotated reference:
/// |<f̄|psi0,p>|^2 = 0 with psi0,p = k0 psi0 / ||k0 psi0||.
struct SchemeB {};
/// A caller-supplied |psi_f>, e.g. a measured elliptic state.
struct ExplicitPostselection {
  PureState psi_f;
};

using Postselection = std::variant<SchemeA, SchemeB, ExplicitPostselection>;

struct SchemeConfig {
  PureState m = PureState::one();  // partial-collapse orientation
  double p = 0.0;                  // click probability of |M> (p0 = 0)
  Postselection postselection = SchemeA{};
  PureState reference = PureState::zero();

  /// Throws InvalidArgument unless p is in [0, 1].
  void validate() const;
};

PureState resolve_scheme_a(const PureState& reference);

/// Throws NumericalDegeneracy (kDegenerateReference) when the partial
/// collapse absorbs the reference with certainty.
PureState resolve_scheme_b(const PureState& reference, const PureState& m, double p);

/// The concrete |psi_f> for cfg.
PureState resolve_postselection(const SchemeConfig& cfg);

/// make_kraus(cfg.m, 0, cfg.p)
KrausPair scheme_kraus(const SchemeConfig& cfg);

TreeProbabilities scheme_tree(const PureState& psi, const SchemeConfig& cfg);

/// P(M_w | M̄_s) = P(M_w) / [P(M_w) + P(M̄_w) P(M̄_s | M̄_w)].
/// Throws NumericalDegeneracy (kUndefinedConditional) on a zero denominator.
double conditional_nv_prob(const PureState& psi, const SchemeConfig& cfg);

/// (1/p) P(M_w | M̄_s), which equals <psi|M><M|psi> / P(M̄_s).
/// Throws InvalidArgument for p == 0.
double null_value(const PureState& psi, const SchemeConfig& cfg);

/// Laboratory gauge: |M> = |1> (vertical), reference
/// cos(-delta_m)|0> + sin(-delta_m)|1>, so theta_M = pi/2 + delta_m relative
/// to the reference.
SchemeConfig lab_scheme(double delta_m, double p, Postselection postselection);

/// The standard single-measurement benchmark expressed as a scheme: no
/// partial collapse, postselection along `m_std`. The M_s leaf then counts
/// standard detections.
SchemeConfig standard_scheme(const PureState& m_std, const PureState& reference);

/// The standard orientation: orthogonal to the reference.
PureState standard_orientation(const PureState& reference);

}  // namespace nullvalue

#endif  // NULLVALUE_NULL_VALUE_H_
