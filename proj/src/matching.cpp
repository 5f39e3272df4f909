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

#include "pnslab/matching.hpp"

#include <cmath>
#include <string>

#include "pnslab/errors.hpp"

namespace pnslab {

double b_match(const ChannelParams& params) {
  validate(params);
  const double b = (std::exp(params.mu * (1.0 - params.eta)) - 1.0) / params.mu;
  if (b > 1.0 + kSignTol) {
    throw FullBlockingRegime(
        "b_match = " + std::to_string(b) +
            " > 1: Eve can block all single-photon pulses outright",
        b);
  }
  return b;
}

PhotonDistribution match_distribution(const ChannelParams& params, int n_max) {
  b_match(params);  // propagates FullBlockingRegime
  if (n_max < 2) {
    throw InvalidParameter("n_max must be >= 2, got " + std::to_string(n_max));
  }

  const double mu = params.mu;
  const double emu = std::exp(-mu);
  const double evac = std::exp(-params.eta * mu);

  PhotonDistribution dist;
  dist.probs.resize(n_max + 1);
  dist.probs[0] = evac;
  // Can round a hair below zero right at the b_match = 1 boundary.
  dist.probs[1] = std::max(0.0, (1.0 + mu + mu * mu / 2.0) * emu - evac);
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

DifferenceProfile difference_profile(const ChannelParams& params, int n_max) {
  const PhotonDistribution match = match_distribution(params, n_max);
  const PhotonDistribution loss = poisson(params.mu * params.eta, n_max);

  DifferenceProfile profile;
  profile.mu = params.mu;
  profile.eta = params.eta;
  profile.d.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    profile.d[n] = match.probs[n] - loss.probs[n];
  }
  profile.tail_diff = match.tail_mass - loss.tail_mass;

  // turning_index: defined only for the clean pattern
  // (zero, nonpositive..., nonnegative...).  Values within kSignTol of zero
  // are compatible with either block.
  int first_pos = -1;
  for (int n = 1; n <= n_max; ++n) {
    if (profile.d[n] > kSignTol) {
      first_pos = n;
      break;
    }
  }
  if (first_pos >= 0) {
    bool clean = true;
    for (int n = first_pos; n <= n_max; ++n) {
      if (profile.d[n] < -kSignTol) {
        clean = false;
        break;
      }
    }
    if (clean) profile.turning_index = first_pos - 1;
  }
  return profile;
}

FeasibilityReport feasibility_check(const DifferenceProfile& profile) {
  FeasibilityReport report;
  report.feasible = true;
  double prefix = 0.0;
  for (int n = 0; n <= profile.n_max(); ++n) {
    prefix += profile.d[n];
    if (prefix > report.max_prefix) report.max_prefix = prefix;
    if (prefix > kSignTol && report.feasible) {
      report.feasible = false;
      report.witness = n;
    }
  }
  return report;
}

bool induction_sign_check(const ChannelParams& params, int n_max) {
  validate(params);
  if (params.eta > 0.75) {
    throw OutOfRange("induction premise requires eta <= 3/4, got " +
                     std::to_string(params.eta));
  }
  const DifferenceProfile profile = difference_profile(params, n_max);
  if (std::abs(profile.d[0]) > kSignTol) return false;

  // Once strictly positive, d must stay nonnegative.
  bool seen_positive = false;
  for (int n = 2; n <= n_max; ++n) {
    if (seen_positive && profile.d[n] < -kSignTol) return false;
    if (profile.d[n] > kSignTol) seen_positive = true;
  }
  // Full pattern: a nonpositive block starting at n=1, then nonnegative.
  return profile.turning_index.has_value() || !seen_positive;
}

}  // namespace pnslab
