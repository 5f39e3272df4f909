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
// The feasibility frontier: the exact single-photon difference d1, its
// small-parameter approximation, the critical transmission eta0(mu) where d1
// vanishes, and the sampled region/curve data behind the feasibility plots.

#ifndef PNSLAB_BOUNDARY_HPP
#define PNSLAB_BOUNDARY_HPP

#include <string>
#include <utility>
#include <vector>

namespace pnslab {

struct BoundarySample {
  double mu = 0.0;
  double eta0_exact = 0.0;
  double eta0_approx = 0.0;
};

struct BoundaryCurve {
  std::vector<BoundarySample> samples;           // strictly ascending in mu
  std::vector<std::pair<double, std::string>> skipped;  // mu -> reason
  std::pair<double, double> mu_range{0.0, 0.0};
  int steps = 0;
};

struct RegionCell {
  double d1 = 0.0;
  bool feasible = false;  // d1 <= 0
};

struct RegionGrid {
  std::vector<double> mu_axis;
  std::vector<double> eta_axis;
  std::vector<std::vector<RegionCell>> cells;  // cells[i][j] at (mu_i, eta_j)
};

// d1 = (1 + mu + mu^2/2) e^{-mu} - (1 + eta mu) e^{-eta mu}: the surplus of
// single-photon signals after the vacuum-matched attack relative to the
// lossy channel.  eta = 0 is admitted (source side only, no channel).
double d1_exact(double mu, double eta);

// Quartic expansion of d1: mu^2/2 (-mu/3 + mu^2/4 + eta^2).
double d1_approx(double mu, double eta);

// Root of d1 in eta over [1e-9, 0.75] by bisection.  The bracket is driven
// to 1e-14 so the root residual |d1(mu, eta0)| stays below 1e-12.  Throws
// NoRoot (with both endpoint values) if the bracket does not straddle zero.
double eta0_exact(double mu);

// sqrt(mu/3 - mu^2/4); requires mu < 4/3 for a positive radicand.
double eta0_approx(double mu);

// Samples d1 on a steps x steps grid over the given parameter rectangle.
RegionGrid region_grid(std::pair<double, double> mu_range,
                       std::pair<double, double> eta_range, int steps);

// Samples (mu, eta0_exact, eta0_approx); mu values without a root in the
// bracket are skipped and reported in `skipped`.
BoundaryCurve boundary_curve(std::pair<double, double> mu_range, int steps);

}  // namespace pnslab

#endif  // PNSLAB_BOUNDARY_HPP
