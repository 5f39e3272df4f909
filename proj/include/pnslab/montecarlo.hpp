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
// Pulse-level simulation of the lossy channel and of the (base / extended)
// PNS attack, with a two-sample chi-squared distinguishability test.  Runs
// are bit-reproducible for a fixed (seed, config): pulses are processed in
// fixed-size chunks, each driven by a seed-derived mt19937_64 substream, so
// a future parallel evaluation of chunks cannot change results.

#ifndef PNSLAB_MONTECARLO_HPP
#define PNSLAB_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "pnslab/distributions.hpp"

namespace pnslab {

enum class SimulationMode { kLossyChannel, kBasePns, kExtendedPns };

struct SimulationConfig {
  ChannelParams params{0.0, 0.0};
  std::uint64_t pulses = 0;
  std::uint64_t seed = 0;
  SimulationMode mode = SimulationMode::kLossyChannel;
};

struct SimulationResult {
  SimulationConfig config;
  std::vector<std::uint64_t> counts;   // histogram over delivered count
  std::uint64_t nonvacuum_count = 0;   // delivered pulses with m >= 1
  std::uint64_t tagged_count = 0;      // delivered pulses with origin n >= 2
  std::uint64_t vacuum_violations = 0; // attack transitions n >= 2 -> m = 0
  PhotonDistribution analytic;         // the mode's analytic distribution
  double tv_distance_to_analytic = 0.0;
  std::vector<double> per_bin_z;       // per bin, against `analytic`
};

struct ChiSquaredReport {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  int groups = 0;              // bins retained after pooling (expected >= 5)
  bool distinguishable = false;  // p_value < 0.001
};

// Draws per-pulse photon numbers from Poisson(mu) by CDF inversion and
// applies the mode's per-pulse map (binomial thinning / base attack with
// b_match / composite-plan row sampling).  Throws the plan-construction
// error for extended-pns outside the feasible region.
SimulationResult simulate(const SimulationConfig& config);

// Two-sample chi-squared over bins with expected count >= 5 (sparser bins
// pool into the last retained bin); requires equal pulse counts.
ChiSquaredReport distinguishability_report(const SimulationResult& a,
                                           const SimulationResult& b);

// One-sample goodness of fit of a result against its analytic distribution.
ChiSquaredReport goodness_of_fit_report(const SimulationResult& result);

}  // namespace pnslab

#endif  // PNSLAB_MONTECARLO_HPP
