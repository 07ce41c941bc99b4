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

#ifndef NULLVALUE_SINGLE_COPY_H_
#define NULLVALUE_SINGLE_COPY_H_

#include <functional>
#include <iosfwd>
#include <vector>

#include "nullvalue/measurement.h"
#include "nullvalue/qubit.h"

namespace nullvalue {

/// Uniform prior over a cap of half-angle delta_max around |psi0> = |0>:
/// delta_1 in [0, delta_max], delta_2 in [0, pi], measure sin(2 delta_1).
/// In the coefficient gauge delta_max = pi/2 already covers the whole sphere.
class CapPrior {
 public:
  /// Throws InvalidArgument unless 0 < delta_max <= pi/2.
  explicit CapPrior(double delta_max);

  double delta_max() const { return delta_max_; }

  /// S(delta_max) = integral of sin(2 delta_1) over the cap.
  double normalization() const;

  /// Prior mean of |psi_delta><psi_delta|. Any cap-averaged expectation of an
  /// operator A is Tr(A rho_bar).
  Operator2 average_state() const;

  /// Numerical cap mean of f(delta_1, delta_2) by adaptive quadrature.
  double average(const std::function<double(double, double)>& f) const;

 private:
  double delta_max_;
};

/// |psi_delta> = cos(delta_1)|0> + sin(delta_1) e^{i delta_2}|1>.
PureState cap_state(double delta_1, double delta_2);

/// Single projective measurement along |M>; a click declares psi_delta.
/// Returns (1/2)[P(psi0 | psi_delta) + P(psi_delta | psi0)].
double min_error_prob(const PureState& psi0, const PureState& psi_delta, const PureState& m);

/// Cap mean of P(psi0 | psi_delta) for |M> = cos(theta_M)|0> + sin(theta_M)|1>:
/// (1/2)(1 - cos(2 theta_M) cos^2(delta_max)).
double cap_averaged_confusion(double theta_m, const CapPrior& cap);

struct SingleCopyReport {
  double p_err = 0.0;
  double p_inc = 0.0;
  double psi0_inconclusive = 0.0;      // <psi0|Π?|psi0>
  double delta_inconclusive = 0.0;     // <psi_delta|Π?|psi_delta>
  double psi0_second_click = 0.0;      // <psi0|Π2|psi0>
  double delta_first_click = 0.0;      // <psi_delta|Π1|psi_delta>
};

/// Three-outcome discrimination. A Π1 click is read as psi0 and a Π2 click as
/// psi_delta. Throws NumericalDegeneracy when p_inc == 1.
SingleCopyReport intermediate_report(const PureState& psi0, const PureState& psi_delta,
                                     const PovmTriple& povm);

/// POVM in the single-copy gauge: psi0 = |0>, |M> at theta_M (phi_M = 0),
/// p0 = 0, p1 = p, postselection at (theta_f, phi_f).
PovmTriple gauge_povm(double theta_m, double theta_f, double phi_f, double p);

struct CapAverages {
  double mean_inconclusive = 0.0;  // cap mean of <psi_delta|Π?|psi_delta>
  double mean_first_click = 0.0;   // cap mean of <psi_delta|Π1|psi_delta>
};

CapAverages cap_averaged_intermediate(double theta_m, double theta_f, double phi_f,
                                      double p, const CapPrior& cap);

/// Error and inconclusive probabilities with psi_delta averaged over the cap.
/// Throws NumericalDegeneracy when the averaged p_inc is 1.
SingleCopyReport averaged_intermediate_report(double theta_m, double theta_f, double phi_f,
                                              double p, const CapPrior& cap);

struct GridSpec {
  int theta_m_points = 101;
  int theta_f_points = 101;
};

struct OrientationOptimum {
  std::vector<double> theta_m_axis;
  std::vector<double> theta_f_axis;
  /// Averaged error, row-major with theta_M as the slow index. NaN marks
  /// cells where every outcome is inconclusive.
  std::vector<double> p_err_grid;

  int best_i = 0;
  int best_j = 0;
  double theta_m = 0.0;  // grid argmin
  double theta_f = 0.0;
  double p_err = 0.0;

  double refined_theta_m = 0.0;  // after golden-section refinement
  double refined_theta_f = 0.0;
  double refined_p_err = 0.0;

  double at(int i, int j) const {
    return p_err_grid[static_cast<std::size_t>(i) * theta_f_axis.size() + j];
  }
};

/// Grid search over (theta_M, theta_f) in [0, pi]^2 followed by one
/// golden-section refinement around the best cell. Ties go to the smallest
/// theta_M, then the smallest theta_f. Throws InvalidArgument if either axis
/// has fewer than 32 points.
OrientationOptimum optimize_orientations(double p, const CapPrior& cap, double phi_f,
                                         const GridSpec& grid = {});

/// CSV with header `theta_M,theta_f,p_err`, row-major, 9 significant digits.
void write_contour_csv(std::ostream& out, const OrientationOptimum& optimum);

}  // namespace nullvalue

#endif  // NULLVALUE_SINGLE_COPY_H_
