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

#include "nullvalue/quadrature.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nullvalue {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr int kMaxDepth = 30;

// Bisects until the Kronrod/Gauss difference on each piece is within its
// share of the absolute tolerance. Boost's own adaptive driver uses a
// tolerance relative to the estimate, which never terminates early on
// integrals that vanish by symmetry.
template <typename F>
double adapt(const F& f, double a, double b, double tol, int depth) {
  double err = 0.0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  if (err <= tol || depth == 0) return v;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth - 1) + adapt(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_2d(const std::function<double(double, double)>& f, double x0, double x1,
                    double y0, double y1, double abs_tol) {
  // Half the budget goes to the outer rule; inner errors integrate over a
  // length (x1 - x0), so each inner call gets abs_tol / (2 (x1 - x0)).
  const double width = std::abs(x1 - x0);
  const double inner_tol = width > 0.0 ? 0.5 * abs_tol / width : abs_tol;
  auto inner = [&](double x) {
    return adapt([&](double y) { return f(x, y); }, y0, y1, inner_tol, kMaxDepth);
  };
  return adapt(inner, x0, x1, 0.5 * abs_tol, kMaxDepth);
}

}  // namespace nullvalue
