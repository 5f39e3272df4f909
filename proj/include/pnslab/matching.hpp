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
// Vacuum matching: the blocking fraction that equalizes the vacuum bin of
// the PNS attack with the lossy channel, the resulting matched distribution,
// the per-bin difference profile d_n, and the CDF-dominance feasibility test
// that decides whether Eve can redistribute the delivered statistics into an
// exact Poissonian.

#ifndef PNSLAB_MATCHING_HPP
#define PNSLAB_MATCHING_HPP

#include <optional>
#include <vector>

#include "pnslab/distributions.hpp"

namespace pnslab {

// Absolute tolerance for sign decisions on O(1) probability masses.
inline constexpr double kSignTol = 1e-12;

// d[n] = P_match[n] - P_loss[n].  The vacuum bin is matched by construction,
// the full sum (including the tail difference) is zero up to rounding.
struct DifferenceProfile {
  std::vector<double> d;
  double tail_diff = 0.0;  // match tail mass minus lossy-channel tail mass
  std::optional<int> turning_index;  // last nonpositive index before the
                                     // profile turns nonnegative, if the
                                     // sign pattern is clean
  double mu = 0.0;
  double eta = 0.0;

  int n_max() const { return static_cast<int>(d.size()) - 1; }
};

struct FeasibilityReport {
  bool feasible = false;
  std::optional<int> witness;  // first prefix where dominance fails
  double max_prefix = 0.0;     // largest running sum of d encountered
};

// Blocking fraction that matches the vacuum bins, (e^{mu(1-eta)} - 1)/mu.
// Throws FullBlockingRegime when the value exceeds 1: the channel is so
// lossy that Eve can block every single-photon pulse and still stay under
// Bob's expected non-vacuum rate, so vacuum matching is moot.
double b_match(const ChannelParams& params);

// Delivered distribution of the vacuum-matched attack.  Equals
// pns_distribution(mu, b_match) bin by bin.
PhotonDistribution match_distribution(const ChannelParams& params, int n_max);

// Difference profile d_n between the matched attack and the lossy channel.
DifferenceProfile difference_profile(const ChannelParams& params, int n_max);

// CDF dominance: redistribution from higher to lower photon numbers exists
// iff every prefix sum of d is <= 0 (within kSignTol).  Infeasibility is an
// ordinary outcome, reported with the first violating index.
FeasibilityReport feasibility_check(const DifferenceProfile& profile);

// Numerically verifies the sign pattern (zero, nonpositive..., nonnegative...)
// of the profile, in particular that d_n never returns to negative once
// positive for n >= 2.  Only certified for eta <= 3/4; throws OutOfRange
// above that.
bool induction_sign_check(const ChannelParams& params, int n_max);

}  // namespace pnslab

#endif  // PNSLAB_MATCHING_HPP
