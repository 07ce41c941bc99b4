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

#ifndef NULLVALUE_QUADRATURE_H_
#define NULLVALUE_QUADRATURE_H_

#include <functional>

#include "nullvalue/qubit.h"

namespace nullvalue {

/// Adaptive 2-D integral of f(x, y) over [x0, x1] x [y0, y1], as a nested
/// (tensor) 15-point Gauss-Kronrod rule with bisection on each axis.
double integrate_2d(const std::function<double(double, double)>& f, double x0, double x1,
                    double y0, double y1, double abs_tol = kTolerance.quadrature);

}  // namespace nullvalue

#endif  // NULLVALUE_QUADRATURE_H_
