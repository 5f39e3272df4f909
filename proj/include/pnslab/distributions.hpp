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
// Analytic photon-number distributions: the Poissonian source/channel, the
// photon-number-splitting (PNS) attack with blocking fraction b, and the
// per-pulse transition map of the base attack.  All probabilities are built
// with multiplicative recurrences; there are no factorial or gamma calls.

#ifndef PNSLAB_DISTRIBUTIONS_HPP
#define PNSLAB_DISTRIBUTIONS_HPP

#include <optional>
#include <vector>

namespace pnslab {

// Truncated probability mass function over photon number.  probs[n] holds
// P[N = n] for n in [0, n_max]; tail_mass holds P[N > n_max] explicitly so
// total mass is always accounted for.
struct PhotonDistribution {
  std::vector<double> probs;
  double tail_mass = 0.0;
  std::optional<double> mean_label;  // nominal mean, informational only

  int n_max() const { return static_cast<int>(probs.size()) - 1; }

  // P[N = n]; zero beyond the truncation point.
  double p(int n) const {
    return (n >= 0 && n < static_cast<int>(probs.size())) ? probs[n] : 0.0;
  }

  double total_mass() const;
};

// Source mean photon number and single-photon channel transmission.
struct ChannelParams {
  double mu;   // mean photon number, > 0
  double eta;  // transmission efficiency, in (0, 1]
};

// Throws InvalidParameter unless 0 < mu and 0 < eta <= 1.
void validate(const ChannelParams& params);

// Smallest n with Poisson(mu) upper-tail mass below 1e-15, floored at 16.
int default_n_max(double mu);

// Poisson pmf with the given mean, truncated at n_max.
// probs[n] = mean^n e^{-mean} / n!, built by the ratio recurrence
// probs[n] = probs[n-1] * mean / n; stable for mean <= 50.
PhotonDistribution poisson(double mean, int n_max);

// Photon-number distribution delivered by the base PNS attack in which Eve
// blocks a fraction b of single-photon pulses and takes one photon from
// every multi-photon pulse.
PhotonDistribution pns_distribution(double mu, double b, int n_max);

// Per-pulse transition of the base attack for a pulse of n photons:
// n=0 passes, n=1 is blocked with probability b, n>=2 loses one photon.
// Returned vector is a distribution over the delivered count m in [0, n].
std::vector<double> base_pns_map(int n, double b);

}  // namespace pnslab

#endif  // PNSLAB_DISTRIBUTIONS_HPP
