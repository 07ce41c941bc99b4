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

#include "nullvalue/single_copy.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "nullvalue/errors.h"
#include "nullvalue/format.h"
#include "nullvalue/quadrature.h"

namespace nullvalue {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMinGridPoints = 32;
constexpr int kGoldenIterations = 60;
constexpr int kRefinementSweeps = 3;
// Grid values closer than this are ties; keeps the lexicographic rule stable
// against rounding between mirror-image orientations.
constexpr double kTieTolerance = 1e-13;

std::vector<double> axis(int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = kPi * k / (n - 1);
  return out;
}

double averaged_error_or_nan(double theta_m, double theta_f, double phi_f, double p,
                             const CapPrior& cap) {
  try {
    return averaged_intermediate_report(theta_m, theta_f, phi_f, p, cap).p_err;
  } catch (const NumericalDegeneracy&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

// Minimizes f on [lo, hi] by golden-section search.
template <typename F>
double golden_section(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < kGoldenIterations && (b - a) > 1e-12; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

CapPrior::CapPrior(double delta_max) : delta_max_(delta_max) {
  // Allow rounding in values like 1.5707963 passed on a command line.
  if (!(delta_max > 0.0 && delta_max <= kPi / 2 + 1e-12)) {
    throw InvalidArgument("CapPrior: delta_max must lie in (0, pi/2]");
  }
}

double CapPrior::normalization() const {
  const double s = std::sin(delta_max_);
  return kPi * s * s;  // pi (1 - cos 2Δ) / 2
}

Operator2 CapPrior::average_state() const {
  const double c2 = std::cos(delta_max_) * std::cos(delta_max_);
  const double s2 = std::sin(delta_max_) * std::sin(delta_max_);
  const double two = 2.0 * delta_max_;
  // Prior mean of sin(2 delta_1); the e^{-i delta_2} mean over [0, pi] is -2i/pi.
  const double mean_sin = (two - std::sin(two) * std::cos(two)) / (4.0 * s2);
  const Complex off = Complex(0.0, -mean_sin / kPi);
  Eigen::Matrix2cd rho;
  rho << 0.5 * (1.0 + c2), off, std::conj(off), 0.5 * (1.0 - c2);
  return Operator2(rho);
}

double CapPrior::average(const std::function<double(double, double)>& f) const {
  const double integral = integrate_2d(
      [&](double d1, double d2) { return f(d1, d2) * std::sin(2.0 * d1); }, 0.0,
      delta_max_, 0.0, kPi);
  return integral / normalization();
}

PureState cap_state(double delta_1, double delta_2) {
  return state_from_angles({delta_1, delta_2});
}

double min_error_prob(const PureState& psi0, const PureState& psi_delta, const PureState& m) {
  const double declare_delta_given_0 = overlap_probability(m, psi0);
  const double declare_0_given_delta = 1.0 - overlap_probability(m, psi_delta);
  return 0.5 * (declare_0_given_delta + declare_delta_given_0);
}

double cap_averaged_confusion(double theta_m, const CapPrior& cap) {
  const double c = std::cos(cap.delta_max());
  return 0.5 * (1.0 - std::cos(2.0 * theta_m) * c * c);
}

SingleCopyReport intermediate_report(const PureState& psi0, const PureState& psi_delta,
                                     const PovmTriple& povm) {
  SingleCopyReport r;
  r.psi0_inconclusive = povm.pi_inconclusive.expectation(psi0);
  r.delta_inconclusive = povm.pi_inconclusive.expectation(psi_delta);
  r.psi0_second_click = povm.pi2.expectation(psi0);
  r.delta_first_click = povm.pi1.expectation(psi_delta);
  r.p_inc = 0.5 * (r.psi0_inconclusive + r.delta_inconclusive);
  const double conclusive = 1.0 - r.p_inc;
  if (conclusive <= kTolerance.algebraic) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kConclusiveProbabilityZero,
                              "intermediate_report: every outcome is inconclusive");
  }
  r.p_err = 0.5 * (r.psi0_second_click + r.delta_first_click) / conclusive;
  return r;
}

PovmTriple gauge_povm(double theta_m, double theta_f, double phi_f, double p) {
  const PureState m = state_from_angles({theta_m, 0.0});
  const PureState f = state_from_angles({theta_f, phi_f});
  return make_povm(make_kraus(m, 0.0, p), f);
}

CapAverages cap_averaged_intermediate(double theta_m, double theta_f, double phi_f,
                                      double p, const CapPrior& cap) {
  const PovmTriple povm = gauge_povm(theta_m, theta_f, phi_f, p);
  const Eigen::Matrix2cd rho = cap.average_state().matrix();
  return CapAverages{(povm.pi_inconclusive.matrix() * rho).trace().real(),
                     (povm.pi1.matrix() * rho).trace().real()};
}

SingleCopyReport averaged_intermediate_report(double theta_m, double theta_f, double phi_f,
                                              double p, const CapPrior& cap) {
  const PovmTriple povm = gauge_povm(theta_m, theta_f, phi_f, p);
  const Eigen::Matrix2cd rho = cap.average_state().matrix();
  const PureState psi0 = PureState::zero();
  SingleCopyReport r;
  r.psi0_inconclusive = povm.pi_inconclusive.expectation(psi0);
  r.psi0_second_click = povm.pi2.expectation(psi0);
  r.delta_inconclusive = (povm.pi_inconclusive.matrix() * rho).trace().real();
  r.delta_first_click = (povm.pi1.matrix() * rho).trace().real();
  r.p_inc = 0.5 * (r.psi0_inconclusive + r.delta_inconclusive);
  const double conclusive = 1.0 - r.p_inc;
  if (conclusive <= kTolerance.algebraic) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kConclusiveProbabilityZero,
                              "averaged_intermediate_report: every outcome is inconclusive");
  }
  r.p_err = 0.5 * (r.psi0_second_click + r.delta_first_click) / conclusive;
  return r;
}

OrientationOptimum optimize_orientations(double p, const CapPrior& cap, double phi_f,
                                         const GridSpec& grid) {
  if (grid.theta_m_points < kMinGridPoints || grid.theta_f_points < kMinGridPoints) {
    throw InvalidArgument("optimize_orientations: grid needs at least 32 points per axis");
  }
  if (!(p >= 0.0 && p <= 1.0) || !std::isfinite(phi_f)) {
    throw InvalidArgument("optimize_orientations: invalid p or phi_f");
  }
  OrientationOptimum out;
  out.theta_m_axis = axis(grid.theta_m_points);
  out.theta_f_axis = axis(grid.theta_f_points);
  out.p_err_grid.resize(out.theta_m_axis.size() * out.theta_f_axis.size());

  // Each cell is independent; filled in index order.
  std::size_t k = 0;
  for (double tm : out.theta_m_axis) {
    for (double tf : out.theta_f_axis) {
      out.p_err_grid[k++] = averaged_error_or_nan(tm, tf, phi_f, p, cap);
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.theta_m_points; ++i) {
    for (int j = 0; j < grid.theta_f_points; ++j) {
      const double v = out.at(i, j);
      if (std::isnan(v)) continue;
      if (v < best - kTieTolerance) {
        best = v;
        out.best_i = i;
        out.best_j = j;
      }
    }
  }
  if (!std::isfinite(best)) {
    throw NumericalDegeneracy(NumericalDegeneracy::Kind::kConclusiveProbabilityZero,
                              "optimize_orientations: no conclusive grid cell");
  }
  out.theta_m = out.theta_m_axis[static_cast<std::size_t>(out.best_i)];
  out.theta_f = out.theta_f_axis[static_cast<std::size_t>(out.best_j)];
  out.p_err = best;

  // Coordinate-wise golden section inside the neighbouring cells.
  const double hm = out.theta_m_axis[1] - out.theta_m_axis[0];
  const double hf = out.theta_f_axis[1] - out.theta_f_axis[0];
  auto objective = [&](double tm, double tf) {
    const double v = averaged_error_or_nan(tm, tf, phi_f, p, cap);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  double tm = out.theta_m, tf = out.theta_f;
  for (int sweep = 0; sweep < kRefinementSweeps; ++sweep) {
    tm = golden_section([&](double x) { return objective(x, tf); },
                        std::max(0.0, out.theta_m - hm), std::min(kPi, out.theta_m + hm));
    tf = golden_section([&](double y) { return objective(tm, y); },
                        std::max(0.0, out.theta_f - hf), std::min(kPi, out.theta_f + hf));
  }
  const double refined = objective(tm, tf);
  if (refined < best) {
    out.refined_theta_m = tm;
    out.refined_theta_f = tf;
    out.refined_p_err = refined;
  } else {
    out.refined_theta_m = out.theta_m;
    out.refined_theta_f = out.theta_f;
    out.refined_p_err = best;
  }
  return out;
}

void write_contour_csv(std::ostream& out, const OrientationOptimum& optimum) {
  out << "theta_M,theta_f,p_err\n";
  for (std::size_t i = 0; i < optimum.theta_m_axis.size(); ++i) {
    for (std::size_t j = 0; j < optimum.theta_f_axis.size(); ++j) {
      out << format_number(optimum.theta_m_axis[i]) << ','
          << format_number(optimum.theta_f_axis[j]) << ','
          << format_number(optimum.at(static_cast<int>(i), static_cast<int>(j))) << '\n';
    }
  }
}

}  // namespace nullvalue
