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
// Eve's explicit redistribution strategy.  Given the vacuum-matched attack
// distribution and the lossy-channel target, a monotone (north-west-corner)
// coupling decides how many extra photons to extract from each pulse so the
// delivered statistics become exactly Poissonian.  Mass only ever moves to
// lower photon numbers and never into the vacuum bin.

#ifndef PNSLAB_TRANSPORT_HPP
#define PNSLAB_TRANSPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pnslab/distributions.hpp"

namespace pnslab {

// Row-stochastic photon-taking strategy for the redistribution step.
// rows[n] is a distribution over delivered counts m in [0, n]; for n >= 1 it
// assigns no mass to m = 0 (the last photon is never taken) and none above n.
struct ExtractionPlan {
  std::vector<std::vector<double>> rows;
  double mu = 0.0;
  double eta = 0.0;

  int n_max() const { return static_cast<int>(rows.size()) - 1; }
};

// Base attack (block singles with probability b, take one photon from every
// multi-photon pulse) chained with an ExtractionPlan.  rows[n] maps the
// source photon number n to the delivered count; for n >= 2 the support lies
// in [1, n-1], so Eve keeps at least one photon and never blocks the pulse.
struct CompositePlan {
  std::vector<std::vector<double>> rows;
  double blocking_fraction = 0.0;
  double mu = 0.0;
  double eta = 0.0;

  int n_max() const { return static_cast<int>(rows.size()) - 1; }
};

struct PlanVerification {
  bool pushforward_ok = false;   // delivered distribution is Poisson(mu*eta)
  double max_bin_deviation = 0.0;
  bool nonvacuum_ok = false;     // delivered non-vacuum fraction preserved
  double nonvacuum_deviation = 0.0;
  bool structure_ok = false;     // no row n >= 2 touches m = 0 or m >= n
  std::optional<int> structure_witness;

  bool all_ok() const { return pushforward_ok && nonvacuum_ok && structure_ok; }
};

// Greedy monotone coupling from `source` to `target`: output bins are filled
// in ascending order, each consuming the smallest not-yet-exhausted source
// bin.  Requires equal vacuum bins and CDF dominance (throws
// MismatchedVacuum / InfeasibleTransport otherwise).  Deterministic: equal
// inputs give bit-identical plans.
ExtractionPlan build_extraction_plan(const PhotonDistribution& source,
                                     const PhotonDistribution& target);

// Chains the base attack with the redistribution plan into a single map
// from source photon number to delivered photon number.
CompositePlan compose_with_base(const ExtractionPlan& plan, double b);

// out[m] = sum_n dist[n] * rows[n][m]; tail mass carried through unchanged.
// Throws UncoveredBin if a bin with mass >= 1e-15 has no plan row.
PhotonDistribution pushforward(const PhotonDistribution& dist,
                               const ExtractionPlan& plan);
PhotonDistribution pushforward(const PhotonDistribution& dist,
                               const CompositePlan& plan);

// Checks that the composite plan really mimics the lossy channel: delivered
// distribution, non-vacuum fraction, and the keep-one-photon support rule.
PlanVerification verify_plan(const CompositePlan& plan,
                             const ChannelParams& params);

// Line-oriented text form: `# pns-plan mu=<v> eta=<v> b=<v>` followed by
// `n m probability` entries at 17 significant digits.  Round-trips
// bit-exactly through parse_plan.
void serialize_plan(const CompositePlan& plan, std::ostream& out);
std::string serialize_plan(const CompositePlan& plan);
CompositePlan parse_plan(std::istream& in);
CompositePlan parse_plan(const std::string& text);

}  // namespace pnslab

#endif  // PNSLAB_TRANSPORT_HPP
