// Copyright 2026 The drivestack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drivestack/polynomials.hpp"

namespace drivestack::planner {

QuinticPolynomial solve_quintic(double p0, double v0, double a0, double pT, double vT,
                                double aT, double T) {
  if (!(T > 0.0)) throw NonPositiveHorizonError("quintic horizon must be positive");
  QuinticPolynomial q;
  q.horizon = T;
  q.c[0] = p0;
  q.c[1] = v0;
  q.c[2] = 0.5 * a0;
  // Residual boundary conditions after the free-coasting part.
  const double dp = pT - (q.c[0] + q.c[1] * T + q.c[2] * T * T);
  const double dv = vT - (q.c[1] + 2.0 * q.c[2] * T);
  const double da = aT - 2.0 * q.c[2];
  const double T2 = T * T;
  const double T3 = T2 * T;
  q.c[3] = (20.0 * dp - 8.0 * dv * T + da * T2) / (2.0 * T3);
  q.c[4] = (-30.0 * dp + 14.0 * dv * T - 2.0 * da * T2) / (2.0 * T3 * T);
  q.c[5] = (12.0 * dp - 6.0 * dv * T + da * T2) / (2.0 * T3 * T2);
  return q;
}

QuarticPolynomial solve_quartic(double p0, double v0, double a0, double vT, double aT,
                                double T) {
  if (!(T > 0.0)) throw NonPositiveHorizonError("quartic horizon must be positive");
  QuarticPolynomial q;
  q.horizon = T;
  q.c[0] = p0;
  q.c[1] = v0;
  q.c[2] = 0.5 * a0;
  const double dv = vT - (q.c[1] + 2.0 * q.c[2] * T);
  const double da = aT - 2.0 * q.c[2];
  q.c[3] = dv / (T * T) - da / (3.0 * T);
  q.c[4] = da / (4.0 * T * T) - dv / (2.0 * T * T * T);
  return q;
}

}  // namespace drivestack::planner
