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

#include "pnslab/montecarlo.hpp"

#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "pnslab/errors.hpp"

using namespace pnslab;

namespace {

SimulationConfig config_at(double mu, double eta, std::uint64_t pulses,
                           std::uint64_t seed, SimulationMode mode) {
  SimulationConfig config;
  config.params = {mu, eta};
  config.pulses = pulses;
  config.seed = seed;
  config.mode = mode;
  return config;
}

std::uint64_t total(const SimulationResult& r) {
  std::uint64_t sum = 0;
  for (auto c : r.counts) sum += c;
  return sum;
}

}  // namespace

TEST_CASE("histogram accounts for every pulse") {
  const SimulationResult one = simulate(
      config_at(0.1, 0.1, 1, 42, SimulationMode::kLossyChannel));
  CHECK(total(one) == 1);

  const SimulationResult many = simulate(
      config_at(0.1, 0.1, 10000, 42, SimulationMode::kExtendedPns));
  CHECK(total(many) == 10000);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
  const auto config =
      config_at(0.1, 0.1, 200000, 7, SimulationMode::kExtendedPns);
  const SimulationResult a = simulate(config);
  const SimulationResult b = simulate(config);
  REQUIRE(a.counts == b.counts);
  CHECK(a.nonvacuum_count == b.nonvacuum_count);
  CHECK(a.tagged_count == b.tagged_count);

  // different seed, different histogram
  auto other = config;
  other.seed = 8;
  CHECK(simulate(other).counts != a.counts);
}

TEST_CASE("lossy channel empirically matches Poisson(mu*eta)") {
  const std::uint64_t pulses = 1000000;
  const SimulationResult result = simulate(
      config_at(0.1, 0.1, pulses, 2026, SimulationMode::kLossyChannel));
  const double p0 = std::exp(-0.01);
  const double se = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(pulses));
  const double empirical =
      static_cast<double>(result.counts[0]) / static_cast<double>(pulses);
  CHECK(std::abs(empirical - p0) < 4.0 * se);
  CHECK(result.tv_distance_to_analytic <
        3.0 * std::sqrt(static_cast<double>(result.analytic.n_max()) /
                        static_cast<double>(pulses)));
  CHECK(result.tagged_count == 0);
  CHECK(result.vacuum_violations == 0);
}

TEST_CASE("extended attack matches Poisson(mu*eta) per bin") {
  const SimulationResult result = simulate(
      config_at(0.1, 0.1, 1000000, 99, SimulationMode::kExtendedPns));
  for (double z : result.per_bin_z) CHECK(std::abs(z) < 4.0);
  CHECK(result.vacuum_violations == 0);

  // non-vacuum conservation
  const double p = 1.0 - std::exp(-0.01);
  const double se = std::sqrt(p * (1.0 - p) / 1e6);
  const double fraction = static_cast<double>(result.nonvacuum_count) / 1e6;
  CHECK(std::abs(fraction - p) < 4.0 * se);
}

TEST_CASE("tagged pulses are exactly the delivered multi-photon origins") {
  const SimulationResult result = simulate(
      config_at(0.2, 0.15, 500000, 5, SimulationMode::kExtendedPns));
  // Every origin n >= 2 is delivered with m >= 1, so the tagged count is a
  // binomial draw of the source multi-photon probability.
  const double p_multi = 1.0 - (1.0 + 0.2) * std::exp(-0.2);
  const double se = std::sqrt(p_multi * (1.0 - p_multi) / 500000.0);
  const double fraction = static_cast<double>(result.tagged_count) / 500000.0;
  CHECK(std::abs(fraction - p_multi) < 4.0 * se);
  CHECK(result.tagged_count <= result.nonvacuum_count);
}

TEST_CASE("extended mode refuses infeasible parameters") {
  CHECK_THROWS_AS(
      simulate(config_at(0.1, 0.7, 100, 1, SimulationMode::kExtendedPns)),
      InfeasibleTransport);
  CHECK_THROWS_AS(
      simulate(config_at(0.1, 0.7, 0, 1, SimulationMode::kLossyChannel)),
      InvalidParameter);
}

TEST_CASE("distinguishability: a result against itself") {
  const SimulationResult result = simulate(
      config_at(0.1, 0.1, 100000, 3, SimulationMode::kLossyChannel));
  const ChiSquaredReport report = distinguishability_report(result, result);
  CHECK(report.statistic == 0.0);
  CHECK(report.p_value == 1.0);
  CHECK_FALSE(report.distinguishable);
}

TEST_CASE("distinguishability requires equal pulse counts") {
  const SimulationResult a = simulate(
      config_at(0.1, 0.1, 1000, 3, SimulationMode::kLossyChannel));
  const SimulationResult b = simulate(
      config_at(0.1, 0.1, 2000, 3, SimulationMode::kLossyChannel));
  CHECK_THROWS_AS(distinguishability_report(a, b), IncompatibleResults);
}

TEST_CASE("base attack is detectable, extended attack is not") {
  const std::uint64_t pulses = 1000000;
  int base_flags = 0;
  int extended_flags = 0;
  const int trials = 5;
  for (int trial = 0; trial < trials; ++trial) {
    const SimulationResult lossy = simulate(config_at(
        0.1, 0.1, pulses, 1000 + trial, SimulationMode::kLossyChannel));
    const SimulationResult base = simulate(config_at(
        0.1, 0.1, pulses, 2000 + trial, SimulationMode::kBasePns));
    const SimulationResult extended = simulate(config_at(
        0.1, 0.1, pulses, 3000 + trial, SimulationMode::kExtendedPns));
    if (distinguishability_report(lossy, base).distinguishable) ++base_flags;
    if (distinguishability_report(lossy, extended).distinguishable) {
      ++extended_flags;
    }
  }
  CHECK(base_flags >= trials - 1);   // bin-2 surplus gives ~50 sigma^2 power
  CHECK(extended_flags <= 1);        // null case at p < 0.001
}

TEST_CASE("goodness of fit against the analytic target") {
  const SimulationResult lossy = simulate(
      config_at(0.1, 0.1, 1000000, 11, SimulationMode::kLossyChannel));
  const ChiSquaredReport fit = goodness_of_fit_report(lossy);
  CHECK(fit.groups >= 2);
  CHECK_FALSE(fit.distinguishable);

  // base attack against the *lossy* analytic target must fail the fit
  SimulationResult base = simulate(
      config_at(0.1, 0.1, 1000000, 12, SimulationMode::kBasePns));
  base.analytic = lossy.analytic;
  const ChiSquaredReport misfit = goodness_of_fit_report(base);
  CHECK(misfit.distinguishable);
}
