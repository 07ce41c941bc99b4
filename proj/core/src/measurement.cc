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

#include "nullvalue/measurement.h"

#include <algorithm>
#include <cmath>

#include "nullvalue/errors.h"

namespace nullvalue {
namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string("make_kraus: ") + name + " outside [0, 1]");
  }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Probabilities that vanish by construction come out as ~1e-33 of rounding.
// Keeping them exactly zero stops 0/0 ratios from turning into noise.
double snap_zero(double x) { return x <= kTolerance.orthogonality ? 0.0 : x; }

}  // namespace

double KrausPair::completeness_defect() const {
  return (k1.adjoint() * k1 + k0.adjoint() * k0).max_abs_diff(Operator2::identity());
}

KrausPair make_kraus(const PureState& m, double p0, double p1) {
  check_probability(p0, "p0");
  check_probability(p1, "p1");
  const Eigen::Matrix2cd on_m = m.projector();
  const Eigen::Matrix2cd on_m_bar = orthogonal_complement(m).projector();
  Operator2 k1(Eigen::Matrix2cd(std::sqrt(p0) * on_m_bar + std::sqrt(p1) * on_m));
  Operator2 k0(Eigen::Matrix2cd(std::sqrt(1.0 - p0) * on_m_bar +
                                std::sqrt(1.0 - p1) * on_m));
  return KrausPair{m, p0, p1, k1, k0};
}

const Operator2& PovmTriple::element(PovmOutcome outcome) const {
  switch (outcome) {
    case PovmOutcome::kFirstClick:
      return pi1;
    case PovmOutcome::kSecondClick:
      return pi2;
    case PovmOutcome::kInconclusive:
      return pi_inconclusive;
  }
  return pi_inconclusive;
}

double PovmTriple::completeness_defect() const {
  return (pi1 + pi2 + pi_inconclusive).max_abs_diff(Operator2::identity());
}

bool PovmTriple::is_positive(double tol) const {
  for (PovmOutcome o : kPovmOutcomes) {
    const Operator2& e = element(o);
    if (!e.is_hermitian(tol) || e.hermitian_eigenvalues()(0) < -tol) return false;
  }
  return true;
}

PovmTriple make_povm(const KrausPair& kraus, const PureState& psi_f) {
  const Operator2 on_f(psi_f.projector());
  const Operator2 on_f_bar(orthogonal_complement(psi_f).projector());
  const Operator2 k0_dag = kraus.k0.adjoint();
  return PovmTriple{kraus.k1.adjoint() * kraus.k1, k0_dag * on_f * kraus.k0,
                    k0_dag * on_f_bar * kraus.k0};
}

DetectorPattern detector_pattern(PovmOutcome outcome) {
  switch (outcome) {
    case PovmOutcome::kFirstClick:
      return {true, false, false};
    case PovmOutcome::kSecondClick:
      return {false, true, false};
    case PovmOutcome::kInconclusive:
      return {false, false, true};
  }
  return {false, false, false};
}

std::array<double, 3> TreeProbabilities::leaves() const {
  const double no_w = 1.0 - p_w;
  return {p_w, no_w * p_s_given_no_w, no_w * p_no_s_given_no_w};
}

double TreeProbabilities::leaf(PovmOutcome outcome) const {
  return leaves()[static_cast<std::size_t>(outcome)];
}

TreeProbabilities tree_probabilities(const PureState& psi, const KrausPair& kraus,
                                     const PureState& psi_f) {
  TreeProbabilities tree;
  const Eigen::Vector2cd survived = kraus.k0.matrix() * psi.vector();
  const double survive_norm = survived.squaredNorm();
  tree.p_w = snap_zero(clamp01((kraus.k1.matrix() * psi.vector()).squaredNorm()));
  if (survive_norm <= kTolerance.degenerate_norm) {
    tree.p_w = 1.0;
    return tree;
  }
  const PureState post = PureState::from_vector(survived);
  tree.post_state = post;
  tree.p_s_given_no_w = snap_zero(overlap_probability(psi_f, post));
  tree.p_no_s_given_no_w = snap_zero(overlap_probability(orthogonal_complement(psi_f), post));
  return tree;
}

}  // namespace nullvalue
