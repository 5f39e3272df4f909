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

#include "pnslab/distributions.hpp"

#include <cmath>
#include <string>

#include "pnslab/errors.hpp"

namespace pnslab {

double PhotonDistribution::total_mass() const {
  double sum = 0.0;
  for (double v : probs) sum += v;
  return sum + tail_mass;
}

void validate(const ChannelParams& params) {
  if (!(params.mu > 0.0)) {
    throw InvalidParameter("mu must be positive, got " +
                           std::to_string(params.mu));
  }
  if (!(params.eta > 0.0) || !(params.eta <= 1.0)) {
    throw InvalidParameter("eta must lie in (0, 1], got " +
                           std::to_string(params.eta));
  }
}

namespace {

constexpr int kNmaxFloor = 16;
constexpr int kNmaxCap = 512;
constexpr double kTailTarget = 1e-15;

void check_n_max(int n_max) {
  if (n_max < 2) {
    throw InvalidParameter("n_max must be >= 2, got " + std::to_string(n_max));
  }
}

}  // namespace

int default_n_max(double mu) {
  if (!(mu > 0.0)) {
    throw InvalidParameter("mu must be positive, got " + std::to_string(mu));
  }
  double term = std::exp(-mu);
  double cum = term;
  int n = 0;
  while (1.0 - cum >= kTailTarget && n < kNmaxCap) {
    ++n;
    term *= mu / n;
    cum += term;
  }
  return n < kNmaxFloor ? kNmaxFloor : n;
}

PhotonDistribution poisson(double mean, int n_max) {
  if (!(mean > 0.0)) {
    throw InvalidParameter("Poisson mean must be positive, got " +
                           std::to_string(mean));
  }
  check_n_max(n_max);

  PhotonDistribution dist;
  dist.probs.resize(n_max + 1);
  dist.mean_label = mean;

  double term = std::exp(-mean);
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) term *= mean / n;
    dist.probs[n] = term;
    sum += term;
  }
  dist.tail_mass = std::max(0.0, 1.0 - sum);
  return dist;
}

PhotonDistribution pns_distribution(double mu, double b, int n_max) {
  if (!(mu > 0.0)) {
    throw InvalidParameter("mu must be positive, got " + std::to_string(mu));
  }
  if (!(b >= 0.0) || !(b <= 1.0)) {
    throw InvalidParameter("blocking fraction must lie in [0, 1], got " +
                           std::to_string(b));
  }
  check_n_max(n_max);

  PhotonDistribution dist;
  dist.probs.resize(n_max + 1);

  const double emu = std::exp(-mu);
  dist.probs[0] = (1.0 + b * mu) * emu;
  dist.probs[1] = ((1.0 - b) * mu + mu * mu / 2.0) * emu;
  // For n >= 2 the delivered mass is the source (n+1)-photon mass:
  // mu^{n+1}/(n+1)! e^{-mu}, advanced by the same ratio recurrence.
  double term = mu * mu * mu / 6.0 * emu;
  for (int n = 2; n <= n_max; ++n) {
    dist.probs[n] = term;
    term *= mu / (n + 2);
  }

  double sum = 0.0;
  for (double v : dist.probs) sum += v;
  dist.tail_mass = std::max(0.0, 1.0 - sum);
  return dist;
}

std::vector<double> base_pns_map(int n, double b) {
  if (n < 0) {
    throw InvalidParameter("photon number must be >= 0, got " +
                           std::to_string(n));
  }
  if (!(b >= 0.0) || !(b <= 1.0)) {
    throw InvalidParameter("blocking fraction must lie in [0, 1], got " +
                           std::to_string(b));
  }
  std::vector<double> row(n + 1, 0.0);
  if (n == 0) {
    row[0] = 1.0;
  } else if (n == 1) {
    row[0] = b;
    row[1] = 1.0 - b;
  } else {
    row[n - 1] = 1.0;
  }
  return row;
}

}  // namespace pnslab
