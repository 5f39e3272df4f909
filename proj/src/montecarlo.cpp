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

#include <algorithm>
#include <cmath>
#include <random>

#include "pnslab/errors.hpp"
#include "pnslab/matching.hpp"
#include "pnslab/stats.hpp"
#include "pnslab/transport.hpp"

namespace pnslab {

namespace {

constexpr std::uint64_t kChunkPulses = 1 << 16;
constexpr double kAlpha = 0.001;       // distinguishability flag level
constexpr double kMinExpected = 5.0;   // chi-squared pooling threshold

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inclusive prefix sums of Poisson(mu) up to n_cap; draws beyond clamp to
// n_cap (the clamped mass is < 1e-15 by the choice of n_max).
std::vector<double> poisson_cdf(double mu, int n_cap) {
  std::vector<double> cdf(n_cap + 1);
  double term = std::exp(-mu);
  double cum = term;
  cdf[0] = cum;
  for (int n = 1; n <= n_cap; ++n) {
    term *= mu / n;
    cum += term;
    cdf[n] = cum;
  }
  return cdf;
}

int invert_cdf(const std::vector<double>& cdf, double u) {
  const int last = static_cast<int>(cdf.size()) - 1;
  for (int n = 0; n < last; ++n) {
    if (u < cdf[n]) return n;
  }
  return last;
}

std::vector<std::vector<double>> row_cdfs(
    const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<double>> cdfs(rows.size());
  for (std::size_t n = 0; n < rows.size(); ++n) {
    cdfs[n].resize(rows[n].size());
    double cum = 0.0;
    for (std::size_t m = 0; m < rows[n].size(); ++m) {
      cum += rows[n][m];
      cdfs[n][m] = cum;
    }
  }
  return cdfs;
}

}  // namespace

SimulationResult simulate(const SimulationConfig& config) {
  validate(config.params);
  if (config.pulses < 1) {
    throw InvalidParameter("simulation needs at least one pulse");
  }

  const double mu = config.params.mu;
  const double eta = config.params.eta;
  const int n_max = default_n_max(mu);
  const int n_cap = n_max + 1;

  SimulationResult result;
  result.config = config;
  result.counts.assign(n_cap + 1, 0);

  // Mode-specific per-pulse machinery.
  double blocking = 0.0;
  std::vector<std::vector<double>> plan_cdfs;
  switch (config.mode) {
    case SimulationMode::kLossyChannel:
      result.analytic = poisson(mu * eta, n_max);
      break;
    case SimulationMode::kBasePns:
      blocking = b_match(config.params);
      result.analytic = pns_distribution(mu, std::min(blocking, 1.0), n_max);
      break;
    case SimulationMode::kExtendedPns: {
      blocking = b_match(config.params);
      const PhotonDistribution source =
          match_distribution(config.params, n_max);
      const PhotonDistribution target = poisson(mu * eta, n_max);
      const ExtractionPlan plan = build_extraction_plan(source, target);
      const CompositePlan composite =
          compose_with_base(plan, std::min(blocking, 1.0));
      plan_cdfs = row_cdfs(composite.rows);
      result.analytic = target;
      break;
    }
  }

  const std::vector<double> source_cdf = poisson_cdf(mu, n_cap);

  const std::uint64_t chunks =
      (config.pulses + kChunkPulses - 1) / kChunkPulses;
  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    std::mt19937_64 rng(splitmix64(config.seed ^ (chunk + 1)));
    const std::uint64_t begin = chunk * kChunkPulses;
    const std::uint64_t end = std::min(begin + kChunkPulses, config.pulses);
    for (std::uint64_t pulse = begin; pulse < end; ++pulse) {
      const int n = invert_cdf(source_cdf, uniform01(rng));
      int m = 0;
      switch (config.mode) {
        case SimulationMode::kLossyChannel:
          for (int k = 0; k < n; ++k) {
            if (uniform01(rng) < eta) ++m;
          }
          break;
        case SimulationMode::kBasePns:
          if (n == 1) {
            m = uniform01(rng) < blocking ? 0 : 1;
          } else if (n >= 2) {
            m = n - 1;
          }
          break;
        case SimulationMode::kExtendedPns:
          if (n >= 1) {
            m = invert_cdf(plan_cdfs[n], uniform01(rng));
          }
          break;
      }
      ++result.counts[m];
      if (m >= 1) {
        ++result.nonvacuum_count;
        if (config.mode != SimulationMode::kLossyChannel && n >= 2) {
          ++result.tagged_count;
        }
      } else if (config.mode != SimulationMode::kLossyChannel && n >= 2) {
        ++result.vacuum_violations;
      }
    }
  }

  // Comparison against the analytic target.
  const double pulses = static_cast<double>(config.pulses);
  result.per_bin_z.assign(result.counts.size(), 0.0);
  double tv = 0.0;
  double beyond = 0.0;
  for (std::size_t bin = 0; bin < result.counts.size(); ++bin) {
    const double empirical = static_cast<double>(result.counts[bin]) / pulses;
    const double p = result.analytic.p(static_cast<int>(bin));
    if (static_cast<int>(bin) <= result.analytic.n_max()) {
      tv += std::abs(empirical - p);
      const double var = pulses * p * (1.0 - p);
      result.per_bin_z[bin] =
          var > 0.0
              ? (static_cast<double>(result.counts[bin]) - pulses * p) /
                    std::sqrt(var)
              : 0.0;
    } else {
      beyond += empirical;
    }
  }
  tv += std::abs(beyond - result.analytic.tail_mass);
  result.tv_distance_to_analytic = 0.5 * tv;
  return result;
}

ChiSquaredReport distinguishability_report(const SimulationResult& a,
                                           const SimulationResult& b) {
  if (a.config.pulses != b.config.pulses) {
    throw IncompatibleResults("pulse counts differ: " +
                              std::to_string(a.config.pulses) + " vs " +
                              std::to_string(b.config.pulses));
  }
  const std::size_t bins = std::max(a.counts.size(), b.counts.size());
  const auto count = [](const SimulationResult& r, std::size_t bin) {
    return bin < r.counts.size() ? r.counts[bin] : 0;
  };

  // Group counts: retain bins while the expected count stays >= 5, pool the
  // sparse remainder into the last retained bin.
  std::vector<double> ga, gb;
  for (std::size_t bin = 0; bin < bins; ++bin) {
    const double ca = static_cast<double>(count(a, bin));
    const double cb = static_cast<double>(count(b, bin));
    if (ga.empty() || (ca + cb) / 2.0 >= kMinExpected) {
      ga.push_back(ca);
      gb.push_back(cb);
    } else {
      for (std::size_t rest = bin; rest < bins; ++rest) {
        ga.back() += static_cast<double>(count(a, rest));
        gb.back() += static_cast<double>(count(b, rest));
      }
      break;
    }
  }

  ChiSquaredReport report;
  report.groups = static_cast<int>(ga.size());
  for (std::size_t g = 0; g < ga.size(); ++g) {
    const double total = ga[g] + gb[g];
    if (total > 0.0) {
      const double diff = ga[g] - gb[g];
      report.statistic += diff * diff / total;
    }
  }
  report.df = std::max(report.groups - 1, 0);
  report.p_value =
      report.df > 0 ? chi_squared_sf(report.statistic, report.df) : 1.0;
  report.distinguishable = report.p_value < kAlpha;
  return report;
}

ChiSquaredReport goodness_of_fit_report(const SimulationResult& result) {
  const double pulses = static_cast<double>(result.config.pulses);
  std::vector<double> expected, observed;
  double rest_expected = 1.0;
  std::size_t bin = 0;
  for (; bin < result.counts.size(); ++bin) {
    const double p = result.analytic.p(static_cast<int>(bin));
    if (!expected.empty() && pulses * p < kMinExpected) break;
    expected.push_back(pulses * p);
    observed.push_back(static_cast<double>(result.counts[bin]));
    rest_expected -= p;
  }
  // Pool the sparse remainder (including the analytic tail mass).
  double rest_observed = 0.0;
  for (; bin < result.counts.size(); ++bin) {
    rest_observed += static_cast<double>(result.counts[bin]);
  }
  expected.back() += pulses * std::max(rest_expected, 0.0);
  observed.back() += rest_observed;

  ChiSquaredReport report;
  report.groups = static_cast<int>(expected.size());
  for (std::size_t g = 0; g < expected.size(); ++g) {
    if (expected[g] > 0.0) {
      const double diff = observed[g] - expected[g];
      report.statistic += diff * diff / expected[g];
    }
  }
  report.df = std::max(report.groups - 1, 0);
  report.p_value =
      report.df > 0 ? chi_squared_sf(report.statistic, report.df) : 1.0;
  report.distinguishable = report.p_value < kAlpha;
  return report;
}

}  // namespace pnslab
