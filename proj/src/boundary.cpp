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

#include "pnslab/boundary.hpp"

#include <cmath>

#include "pnslab/errors.hpp"
#include "pnslab/format.hpp"

namespace pnslab {

namespace {

constexpr double kBracketLow = 1e-9;
constexpr double kBracketHigh = 0.75;  // sufficiency argument holds here only
constexpr double kBracketWidth = 1e-14;

void check_positive_mu(double mu) {
  if (!(mu > 0.0)) {
    throw InvalidParameter("mu must be positive, got " + format_g17(mu));
  }
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> xs(steps);
  for (int i = 0; i < steps; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  }
  xs.back() = hi;
  return xs;
}

}  // namespace

double d1_exact(double mu, double eta) {
  check_positive_mu(mu);
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw InvalidParameter("eta must lie in [0, 1], got " + format_g17(eta));
  }
  return (1.0 + mu + mu * mu / 2.0) * std::exp(-mu) -
         (1.0 + eta * mu) * std::exp(-eta * mu);
}

double d1_approx(double mu, double eta) {
  check_positive_mu(mu);
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw InvalidParameter("eta must lie in [0, 1], got " + format_g17(eta));
  }
  return mu * mu / 2.0 * (-mu / 3.0 + mu * mu / 4.0 + eta * eta);
}

double eta0_exact(double mu) {
  check_positive_mu(mu);
  const double f_low = d1_exact(mu, kBracketLow);
  const double f_high = d1_exact(mu, kBracketHigh);
  if (!(f_low < 0.0) || !(f_high > 0.0)) {
    throw NoRoot("d1 does not change sign on [" + format_g17(kBracketLow) +
                     ", " + format_g17(kBracketHigh) + "] for mu = " +
                     format_g17(mu) + ": d1(low) = " + format_g17(f_low) +
                     ", d1(high) = " + format_g17(f_high),
                 f_low, f_high);
  }
  double lo = kBracketLow;
  double hi = kBracketHigh;
  while (hi - lo > kBracketWidth) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = d1_exact(mu, mid);
    if (f_mid == 0.0) return mid;
    if (f_mid > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double eta0_approx(double mu) {
  check_positive_mu(mu);
  const double radicand = mu / 3.0 - mu * mu / 4.0;
  if (!(radicand > 0.0)) {
    throw InvalidParameter("eta0 approximation needs mu < 4/3, got mu = " +
                           format_g17(mu));
  }
  return std::sqrt(radicand);
}

RegionGrid region_grid(std::pair<double, double> mu_range,
                       std::pair<double, double> eta_range, int steps) {
  if (steps < 2) {
    throw InvalidParameter("grid needs steps >= 2, got " +
                           std::to_string(steps));
  }
  if (!(mu_range.first > 0.0) || !(mu_range.second > mu_range.first) ||
      !(mu_range.second <= 1.0)) {
    throw InvalidParameter("mu range must satisfy 0 < min < max <= 1");
  }
  if (!(eta_range.first > 0.0) || !(eta_range.second > eta_range.first) ||
      !(eta_range.second <= 1.0)) {
    throw InvalidParameter("eta range must satisfy 0 < min < max <= 1");
  }
  RegionGrid grid;
  grid.mu_axis = linspace(mu_range.first, mu_range.second, steps);
  grid.eta_axis = linspace(eta_range.first, eta_range.second, steps);
  grid.cells.resize(steps);
  for (int i = 0; i < steps; ++i) {
    grid.cells[i].resize(steps);
    for (int j = 0; j < steps; ++j) {
      const double d1 = d1_exact(grid.mu_axis[i], grid.eta_axis[j]);
      grid.cells[i][j] = RegionCell{d1, d1 <= 0.0};
    }
  }
  return grid;
}

BoundaryCurve boundary_curve(std::pair<double, double> mu_range, int steps) {
  if (steps < 2) {
    throw InvalidParameter("curve needs steps >= 2, got " +
                           std::to_string(steps));
  }
  if (!(mu_range.first > 0.0) || !(mu_range.second > mu_range.first)) {
    throw InvalidParameter("mu range must satisfy 0 < min < max");
  }
  BoundaryCurve curve;
  curve.mu_range = mu_range;
  curve.steps = steps;
  for (double mu : linspace(mu_range.first, mu_range.second, steps)) {
    try {
      const double exact = eta0_exact(mu);
      const double approx = eta0_approx(mu);
      curve.samples.push_back(BoundarySample{mu, exact, approx});
    } catch (const Error& e) {
      curve.skipped.emplace_back(mu, e.what());
    }
  }
  return curve;
}

}  // namespace pnslab
