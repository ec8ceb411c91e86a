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

#pragma once

#include <array>
#include <stdexcept>

namespace drivestack::planner {

class NonPositiveHorizonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Degree-5 polynomial matching position, velocity and acceleration at both
/// ends of [0, horizon].
struct QuinticPolynomial {
  std::array<double, 6> c{};
  double horizon = 0.0;

  double position(double t) const {
    return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
  }
  double velocity(double t) const {
    return c[1] + t * (2 * c[2] + t * (3 * c[3] + t * (4 * c[4] + t * 5 * c[5])));
  }
  double acceleration(double t) const {
    return 2 * c[2] + t * (6 * c[3] + t * (12 * c[4] + t * 20 * c[5]));
  }
  double jerk(double t) const { return 6 * c[3] + t * (24 * c[4] + t * 60 * c[5]); }

  /// Closed form of the squared-jerk integral over [0, horizon].
  double squared_jerk_integral() const {
    const double T = horizon;
    return T * (36 * c[3] * c[3] +
                T * (144 * c[3] * c[4] +
                     T * (192 * c[4] * c[4] + 240 * c[3] * c[5] +
                          T * (720 * c[4] * c[5] + T * 720 * c[5] * c[5]))));
  }
};

/// Degree-4 polynomial matching position, velocity and acceleration at 0 and
/// velocity and acceleration at horizon; the terminal position is free.
struct QuarticPolynomial {
  std::array<double, 5> c{};
  double horizon = 0.0;

  double position(double t) const {
    return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4])));
  }
  double velocity(double t) const {
    return c[1] + t * (2 * c[2] + t * (3 * c[3] + t * 4 * c[4]));
  }
  double acceleration(double t) const { return 2 * c[2] + t * (6 * c[3] + t * 12 * c[4]); }
  double jerk(double t) const { return 6 * c[3] + t * 24 * c[4]; }

  double squared_jerk_integral() const {
    const double T = horizon;
    return T * (36 * c[3] * c[3] + T * (144 * c[3] * c[4] + T * 192 * c[4] * c[4]));
  }
};

QuinticPolynomial solve_quintic(double p0, double v0, double a0, double pT, double vT,
                                double aT, double T);

QuarticPolynomial solve_quartic(double p0, double v0, double a0, double vT, double aT,
                                double T);

}  // namespace drivestack::planner
