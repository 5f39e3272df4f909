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

#include "pnslab/gain.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pnslab/errors.hpp"

using namespace pnslab;

namespace {

double bound_of(double mu, double eta, double s = 0.5) {
  return s * ((1.0 + mu) * std::exp(-mu) - std::exp(-mu * eta));
}

}  // namespace

TEST_CASE("gain report fields") {
  const GainReport report = gain_bound({0.1, 1.0});
  CHECK(std::abs(report.s_multi - (1.0 - 1.1 * std::exp(-0.1))) < 1e-14);
  CHECK(std::abs(report.p_exp - (1.0 - std::exp(-0.1))) < 1e-14);
  CHECK(report.bound == doctest::Approx(0.04524187090179804).epsilon(1e-13));
  CHECK(report.sifting_factor == 0.5);

  // leading order at mu = eta = small: bound ~ (eta^2 - eta^2/2)/2
  const GainReport tiny = gain_bound({0.01, 0.01});
  CHECK(tiny.bound == doctest::Approx(2.5e-5).epsilon(0.02));

  CHECK_THROWS_AS(gain_bound({0.1, 0.5}, 0.0), InvalidParameter);
  CHECK_THROWS_AS(gain_bound({0.1, 0.5}, 1.5), InvalidParameter);
}

TEST_CASE("gain bound sign matches p_exp vs s_multi") {
  for (double mu : {0.01, 0.05, 0.2, 1.0}) {
    for (double eta : {0.01, 0.1, 0.5, 1.0}) {
      const GainReport report = gain_bound({mu, eta});
      CHECK((report.bound >= 0.0) == (report.p_exp >= report.s_multi));
    }
  }
}

TEST_CASE("mu_opt against the exhaustive grid oracle") {
  // Oracle run first, at 1e-6 resolution over the region of interest.
  for (double eta : {0.1, 0.01}) {
    const double oracle = oracles::grid_search_max(
        [eta](double mu) { return bound_of(mu, eta); }, 1e-6,
        std::min(5.0, 10.0 * eta + 0.5), 1e-6);
    const MuOptResult result = mu_opt(eta);
    CHECK(std::abs(result.mu_opt - oracle) <= 1e-6);
    CHECK(result.bound_at_opt ==
          doctest::Approx(bound_of(oracle, eta)).epsilon(1e-10));
  }
}

TEST_CASE("mu_opt stationarity and ratio behavior") {
  // The first-order condition mu e^{-mu} = eta e^{-mu eta} at the optimum.
  for (double eta : {0.3, 0.1, 0.01, 0.001}) {
    const MuOptResult result = mu_opt(eta);
    const double lhs = result.mu_opt * std::exp(-result.mu_opt);
    const double rhs = eta * std::exp(-result.mu_opt * eta);
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }

  // mu_opt/eta = 1 + eta + eta^2/2 + O(eta^3) decreases to 1 as eta -> 0.
  double prev_excess = 1.0;
  for (double eta : {0.1, 0.01, 0.001}) {
    const double ratio = mu_opt(eta).mu_opt / eta;
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 1.0 + eta + eta * eta);
    CHECK(ratio - 1.0 < prev_excess);
    prev_excess = ratio - 1.0;
  }

  // mu_opt ~ eta in the small-eta limit
  const double ratio_small = mu_opt(1e-4).mu_opt / 1e-4;
  CHECK(std::abs(ratio_small - 1.0) < 0.005);
}

TEST_CASE("working point check at the operating point") {
  const double eta = 0.01;
  const MuOptResult opt = mu_opt(eta);
  const WorkingPointReport report = working_point_check({opt.mu_opt, eta});
  CHECK(report.feasible);
  REQUIRE(report.margin.has_value());
  CHECK(*report.margin > 0.0);
  REQUIRE(report.b_match.has_value());
  CHECK(report.notes.empty());
}

TEST_CASE("working point check reports regime problems") {
  // infeasible point: d1 > 0
  const WorkingPointReport outside = working_point_check({0.1, 0.7});
  CHECK_FALSE(outside.feasible);
  REQUIRE(outside.margin.has_value());
  CHECK(*outside.margin < 0.0);

  // mu = 2, eta = 0.5: approximation domain violated, reported as a note
  const WorkingPointReport awkward = working_point_check({2.0, 0.5});
  CHECK_FALSE(awkward.approx_valid);
  CHECK(!awkward.notes.empty());

  // deep-loss regime: full blocking note, no b_match value
  const WorkingPointReport deep = working_point_check({0.5, 0.05});
  CHECK_FALSE(deep.b_match.has_value());
  CHECK(!deep.notes.empty());
}
