// Copyright 2026 The pnslab Authors.
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
//
// Conservative key-gain bound and the sender's optimal mean photon number.
// The bound is sifting * (p_exp - S_m): positive exactly when Bob's expected
// non-vacuum fraction exceeds the source's multi-photon probability, and
// maximized near mu = eta.

#ifndef PNSLAB_GAIN_HPP
#define PNSLAB_GAIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "pnslab/distributions.hpp"

namespace pnslab {

struct GainReport {
  double mu = 0.0;
  double eta = 0.0;
  double s_multi = 0.0;  // source multi-photon probability 1 - (1+mu)e^{-mu}
  double p_exp = 0.0;    // Bob's non-vacuum fraction 1 - e^{-mu eta}
  double bound = 0.0;    // sifting_factor * (p_exp - s_multi)
  double sifting_factor = 0.5;
};

struct MuOptResult {
  double mu_opt = 0.0;
  double bound_at_opt = 0.0;
};

// How the operating point (mu, eta) sits relative to the mimicry frontier.
struct WorkingPointReport {
  double mu = 0.0;
  double eta = 0.0;
  double d1 = 0.0;
  bool feasible = false;                 // d1 <= 0
  std::optional<double> b_match;         // unset in the full-blocking regime
  std::optional<double> eta0;            // unset when no root in the bracket
  std::optional<double> margin;          // eta0 - eta, when eta0 exists
  bool approx_valid = false;             // eta0 approximation domain mu < 4/3
  std::vector<std::string> notes;        // precondition failures, regimes
};

// Gain bound at a given operating point; sifting_factor in (0, 1]
// (1/2 for the four-state protocol's basis sifting).
GainReport gain_bound(const ChannelParams& params, double sifting_factor = 0.5);

// Maximizes the gain bound over mu in (0, 5]: coarse scan, then bisection on
// the derivative sign within the bracketing interval, to 1e-10 in mu.  At the
// optimum mu e^{-mu} = eta e^{-mu eta} holds to ~1e-10.
MuOptResult mu_opt(double eta, double sifting_factor = 0.5);

// Evaluates every frontier-related precondition at (mu, eta) and reports the
// feasibility verdict plus the distance eta0(mu) - eta to the critical line.
WorkingPointReport working_point_check(const ChannelParams& params);

}  // namespace pnslab

#endif  // PNSLAB_GAIN_HPP
