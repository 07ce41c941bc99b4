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

#include "nullvalue/null_value.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "nullvalue/errors.h"

namespace nullvalue {

void SchemeConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("SchemeConfig: p outside [0, 1]");
  }
}

PureState resolve_scheme_a(const PureState& reference) { return canonical_phase(reference); }

PureState resolve_scheme_b(const PureState& reference, const PureState& m, double p) {
  const KrausPair kraus = make_kraus(m, 0.0, p);
  const Eigen::Vector2cd survived = kraus.k0.matrix() * reference.vector();
  if (survived.squaredNorm() <= kTolerance.degenerate_norm) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kDegenerateReference,
                              "resolve_scheme_b: reference is absorbed with certainty");
  }
  return canonical_phase(PureState::from_vector(survived));
}

PureState resolve_postselection(const SchemeConfig& cfg) {
  struct Visitor {
    const SchemeConfig& cfg;
    PureState operator()(const SchemeA&) const { return resolve_scheme_a(cfg.reference); }
    PureState operator()(const SchemeB&) const {
      return resolve_scheme_b(cfg.reference, cfg.m, cfg.p);
    }
    PureState operator()(const ExplicitPostselection& e) const { return e.psi_f; }
  };
  return std::visit(Visitor{cfg}, cfg.postselection);
}

KrausPair scheme_kraus(const SchemeConfig& cfg) {
  cfg.validate();
  return make_kraus(cfg.m, 0.0, cfg.p);
}

TreeProbabilities scheme_tree(const PureState& psi, const SchemeConfig& cfg) {
  return tree_probabilities(psi, scheme_kraus(cfg), resolve_postselection(cfg));
}

double conditional_nv_prob(const PureState& psi, const SchemeConfig& cfg) {
  const TreeProbabilities tree = scheme_tree(psi, cfg);
  const auto leaves = tree.leaves();
  const double first_click = leaves[0];
  const double denominator = first_click + leaves[2];
  if (!(denominator > 0.0)) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kUndefinedConditional,
                              "conditional_nv_prob: no-click-at-postselection has probability 0");
  }
  return first_click / denominator;
}

double null_value(const PureState& psi, const SchemeConfig& cfg) {
  if (!(cfg.p > 0.0)) {
    throw InvalidArgument("null_value: requires p > 0");
  }
  const double nv = conditional_nv_prob(psi, cfg) / cfg.p;
#ifndef NDEBUG
  // Dual form with A = |M><M| and P(M̄_s) the total no-click probability at
  // the postselection step (a first click always implies no second click).
  const auto leaves = scheme_tree(psi, cfg).leaves();
  const double dual = overlap_probability(cfg.m, psi) / (leaves[0] + leaves[2]);
  assert(std::abs(nv - dual) <= kTolerance.closed_form * std::max(1.0, std::abs(dual)));
#endif
  return nv;
}

SchemeConfig lab_scheme(double delta_m, double p, Postselection postselection) {
  SchemeConfig cfg;
  cfg.m = PureState::one();
  cfg.p = p;
  cfg.postselection = std::move(postselection);
  cfg.reference = PureState::from_amplitudes(std::cos(-delta_m), std::sin(-delta_m));
  cfg.validate();
  return cfg;
}

PureState standard_orientation(const PureState& reference) {
  return orthogonal_complement(reference);
}

SchemeConfig standard_scheme(const PureState& m_std, const PureState& reference) {
  SchemeConfig cfg;
  cfg.m = m_std;
  cfg.p = 0.0;
  cfg.postselection = ExplicitPostselection{m_std};
  cfg.reference = reference;
  return cfg;
}

}  // namespace nullvalue
