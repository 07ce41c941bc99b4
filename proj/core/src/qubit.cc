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

#include "nullvalue/qubit.h"

#include <algorithm>
#include <cmath>

#include "nullvalue/errors.h"

namespace nullvalue {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

PureState PureState::from_amplitudes(Complex a0, Complex a1) {
  return from_vector(Vector(a0, a1));
}

PureState PureState::from_vector(const Vector& v) {
  if (!finite(v(0)) || !finite(v(1))) {
    throw InvalidArgument("PureState: non-finite amplitude");
  }
  const double norm = v.norm();
  if (!(norm > 0.0)) {
    throw InvalidArgument("PureState: zero vector cannot be normalized");
  }
  return PureState(v / norm);
}

PureState PureState::with_global_phase(double chi) const {
  return PureState(amplitudes_ * std::polar(1.0, chi));
}

Eigen::Matrix2cd PureState::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

Operator2::Operator2(const Matrix& m) : m_(m) {
  for (int i = 0; i < 4; ++i) {
    if (!finite(m_(i / 2, i % 2))) {
      throw InvalidArgument("Operator2: non-finite entry");
    }
  }
}

bool Operator2::is_hermitian(double tol) const {
  return max_abs_diff(adjoint()) <= tol;
}

Eigen::Vector2d Operator2::hermitian_eigenvalues() const {
  const double a = m_(0, 0).real();
  const double d = m_(1, 1).real();
  const Complex b = 0.5 * (m_(0, 1) + std::conj(m_(1, 0)));
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(b));
  return Eigen::Vector2d(mean - radius, mean + radius);
}

double Operator2::max_abs_diff(const Operator2& other) const {
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

double Operator2::expectation(const PureState& s) const {
  return (s.vector().adjoint() * m_ * s.vector())(0, 0).real();
}

PureState state_from_angles(const BlochAngles& angles) {
  if (!std::isfinite(angles.theta) || !std::isfinite(angles.phi)) {
    throw InvalidArgument("state_from_angles: non-finite angle");
  }
  return PureState::from_amplitudes(
      std::cos(angles.theta),
      std::sin(angles.theta) * std::polar(1.0, angles.phi));
}

Complex inner(const PureState& a, const PureState& b) {
  return a.vector().dot(b.vector());  // Eigen's dot conjugates the left side.
}

double overlap_probability(const PureState& a, const PureState& b) {
  return std::clamp(std::norm(inner(a, b)), 0.0, 1.0);
}

PureState canonical_phase(const PureState& s) {
  // The leading amplitude is set to its modulus directly so that its
  // imaginary part is exactly zero rather than a rounding residue.
  if (s.a0() != Complex(0.0)) {
    const Complex unit = s.a0() / std::abs(s.a0());
    return PureState::from_amplitudes(std::abs(s.a0()), s.a1() * std::conj(unit));
  }
  return PureState::from_amplitudes(0.0, std::abs(s.a1()));
}

PureState orthogonal_complement(const PureState& s) {
  return canonical_phase(
      PureState::from_amplitudes(-std::conj(s.a1()), std::conj(s.a0())));
}

}  // namespace nullvalue
