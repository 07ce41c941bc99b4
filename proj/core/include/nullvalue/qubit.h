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

#ifndef NULLVALUE_QUBIT_H_
#define NULLVALUE_QUBIT_H_

#include <complex>

#include <Eigen/Core>

namespace nullvalue {

using Complex = std::complex<double>;

/// Every numerical tolerance used by the library lives here.
struct Tolerance {
  /// Algebraic identities: normalization, completeness, tree/POVM equality.
  double algebraic = 1e-12;
  /// Closed-form versus matrix-path agreement.
  double closed_form = 1e-10;
  /// Squared overlaps that must vanish by construction.
  double orthogonality = 1e-24;
  /// Absolute tolerance handed to the adaptive quadrature.
  double quadrature = 1e-8;
  /// Squared norms at or below this are treated as an annihilated state.
  double degenerate_norm = 1e-24;
};

inline constexpr Tolerance kTolerance{};

/// Angles in the coefficient gauge used throughout the library:
///
///   |theta, phi> = cos(theta)|0> + sin(theta) e^{i phi}|1>
///
/// `theta` is the coefficient angle, i.e. HALF the Bloch-sphere polar angle.
/// Closed forms therefore contain 2*theta wherever the Bloch angle appears.
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Normalized qubit pure state. Immutable; every constructor renormalizes.
class PureState {
 public:
  using Vector = Eigen::Vector2cd;

  /// Normalizes (a0, a1). Throws InvalidArgument for non-finite or zero input.
  static PureState from_amplitudes(Complex a0, Complex a1);
  static PureState from_vector(const Vector& v);

  static PureState zero() { return PureState(Vector(1.0, 0.0)); }
  static PureState one() { return PureState(Vector(0.0, 1.0)); }

  Complex a0() const { return amplitudes_(0); }
  Complex a1() const { return amplitudes_(1); }
  const Vector& vector() const { return amplitudes_; }

  /// Multiplies both amplitudes by e^{i chi}.
  PureState with_global_phase(double chi) const;

  /// |s><s|
  Eigen::Matrix2cd projector() const;

 private:
  explicit PureState(const Vector& normalized) : amplitudes_(normalized) {}

  Vector amplitudes_;
};

/// Hermitian-or-not 2x2 complex operator.
class Operator2 {
 public:
  using Matrix = Eigen::Matrix2cd;

  Operator2() : m_(Matrix::Zero()) {}
  explicit Operator2(const Matrix& m);

  static Operator2 identity() { return Operator2(Matrix::Identity()); }
  static Operator2 zero() { return Operator2(); }

  const Matrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  Operator2 adjoint() const { return Operator2(Matrix(m_.adjoint())); }

  bool is_hermitian(double tol = kTolerance.algebraic) const;

  /// Eigenvalues (ascending) of the Hermitian part, in closed form.
  Eigen::Vector2d hermitian_eigenvalues() const;

  /// max_ij |A_ij - B_ij|
  double max_abs_diff(const Operator2& other) const;

  /// Re <s|A|s>.
  double expectation(const PureState& s) const;

  friend Operator2 operator+(const Operator2& a, const Operator2& b) {
    return Operator2(Matrix(a.m_ + b.m_));
  }
  friend Operator2 operator*(const Operator2& a, const Operator2& b) {
    return Operator2(Matrix(a.m_ * b.m_));
  }
  friend Operator2 operator*(double s, const Operator2& a) {
    return Operator2(Matrix(s * a.m_));
  }

 private:
  Matrix m_;
};

PureState state_from_angles(const BlochAngles& angles);

/// <a|b>
Complex inner(const PureState& a, const PureState& b);

/// |<a|b>|^2, symmetric and insensitive to global phase.
double overlap_probability(const PureState& a, const PureState& b);

/// The state orthogonal to `s`, phase-fixed so that its first nonzero
/// amplitude is real and positive.
PureState orthogonal_complement(const PureState& s);

/// Rotates the global phase so the first nonzero amplitude is real positive.
PureState canonical_phase(const PureState& s);

}  // namespace nullvalue

#endif  // NULLVALUE_QUBIT_H_
