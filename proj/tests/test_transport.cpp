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

#include "pnslab/transport.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "pnslab/errors.hpp"
#include "pnslab/matching.hpp"

using namespace pnslab;

namespace {

void check_plan_invariants(const ExtractionPlan& plan) {
  for (int n = 0; n <= plan.n_max(); ++n) {
    const auto& row = plan.rows[n];
    REQUIRE(static_cast<int>(row.size()) == n + 1);  // no mass above n
    double sum = 0.0;
    for (double v : row) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    if (n >= 1) CHECK(row[0] == 0.0);  // never creates vacuum
  }
}

}  // namespace

TEST_CASE("identity transport for equal distributions") {
  const PhotonDistribution dist = poisson(0.3, 16);
  const ExtractionPlan plan = build_extraction_plan(dist, dist);
  check_plan_invariants(plan);
  for (int n = 0; n <= plan.n_max(); ++n) {
    CHECK(plan.rows[n][n] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("plan at (0.1, 0.1) pushes match onto the lossy channel") {
  const ChannelParams params{0.1, 0.1};
  const int n_max = default_n_max(0.1);
  const PhotonDistribution source = match_distribution(params, n_max);
  const PhotonDistribution target = poisson(0.01, n_max);
  const ExtractionPlan plan = build_extraction_plan(source, target);
  check_plan_invariants(plan);

  const PhotonDistribution pushed = oracles::push_through_rows(source, plan.rows);
  for (int n = 0; n <= n_max; ++n) {
    CHECK(std::abs(pushed.probs[n] - target.probs[n]) < 1e-12);
  }
}

TEST_CASE("infeasible pair is rejected with the violating prefix") {
  const ChannelParams params{0.1, 0.7};
  const int n_max = default_n_max(0.1);
  const PhotonDistribution source = match_distribution(params, n_max);
  const PhotonDistribution target = poisson(0.07, n_max);
  CHECK_THROWS_AS(build_extraction_plan(source, target), InfeasibleTransport);
  try {
    build_extraction_plan(source, target);
  } catch (const InfeasibleTransport& e) {
    CHECK(e.witness == 1);
  }
}

TEST_CASE("mismatched vacuum is rejected") {
  const PhotonDistribution a = poisson(0.3, 16);
  const PhotonDistribution b = poisson(0.2, 16);
  CHECK_THROWS_AS(build_extraction_plan(a, b), MismatchedVacuum);
}

TEST_CASE("composition with the base attack") {
  const PhotonDistribution dist = poisson(0.3, 16);
  const ExtractionPlan identity = build_extraction_plan(dist, dist);

  SUBCASE("base attack alone") {
    const CompositePlan composite = compose_with_base(identity, 0.0);
    CHECK(composite.rows[0][0] == 1.0);
    CHECK(composite.rows[1][1] == 1.0);
    for (int n = 2; n <= composite.n_max(); ++n) {
      CHECK(composite.rows[n][n - 1] == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("full single blocking") {
    const CompositePlan composite = compose_with_base(identity, 1.0);
    CHECK(composite.rows[1][0] == 1.0);
    CHECK(composite.rows[1][1] == 0.0);
  }
  SUBCASE("blocking fraction is validated") {
    CHECK_THROWS_AS(compose_with_base(identity, 1.5), InvalidParameter);
  }
}

TEST_CASE("composite plan reproduces the lossy channel end to end") {
  for (auto [mu, eta] : {std::pair{0.1, 0.1}, std::pair{0.3, 0.2}}) {
    const ChannelParams params{mu, eta};
    const int n_max = default_n_max(mu);
    const PhotonDistribution source = match_distribution(params, n_max);
    const PhotonDistribution target = poisson(mu * eta, n_max);
    const ExtractionPlan plan = build_extraction_plan(source, target);
    const CompositePlan composite = compose_with_base(plan, b_match(params));

    // brute-force pushforward of the full source through the composite
    const PhotonDistribution emitted = poisson(mu, composite.n_max());
    const PhotonDistribution delivered =
        oracles::push_through_rows(emitted, composite.rows);
    const PhotonDistribution want = poisson(mu * eta, composite.n_max());
    for (int n = 0; n <= want.n_max(); ++n) {
      CHECK(std::abs(delivered.probs[n] - want.probs[n]) < 1e-12);
    }
  }
}

TEST_CASE("pushforward basics") {
  const PhotonDistribution dist = poisson(0.3, 16);
  const ExtractionPlan identity = build_extraction_plan(dist, dist);

  SUBCASE("identity keeps the distribution") {
    const PhotonDistribution out = pushforward(dist, identity);
    for (int n = 0; n <= dist.n_max(); ++n) {
      CHECK(out.probs[n] == dist.probs[n]);
    }
    CHECK(out.tail_mass == dist.tail_mass);
  }

  SUBCASE("point mass through the base map") {
    PhotonDistribution point;
    point.probs.assign(17, 0.0);
    point.probs[3] = 1.0;
    const CompositePlan composite = compose_with_base(identity, 0.0);
    const PhotonDistribution out = pushforward(point, composite);
    CHECK(out.probs[2] == 1.0);
  }

  SUBCASE("linearity in the input distribution") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> alpha_draw(0.0, 1.0);
    const PhotonDistribution p = poisson(0.3, 16);
    const PhotonDistribution q = poisson(0.09, 16);
    const PhotonDistribution source = match_distribution({0.1, 0.1}, 16);
    const ExtractionPlan plan =
        build_extraction_plan(source, poisson(0.01, 16));
    for (int i = 0; i < 20; ++i) {
      const double alpha = alpha_draw(rng);
      PhotonDistribution mix;
      mix.probs.resize(17);
      for (int n = 0; n <= 16; ++n) {
        mix.probs[n] = alpha * p.probs[n] + (1.0 - alpha) * q.probs[n];
      }
      mix.tail_mass = alpha * p.tail_mass + (1.0 - alpha) * q.tail_mass;
      const PhotonDistribution lhs = pushforward(mix, plan);
      const PhotonDistribution pp = pushforward(p, plan);
      const PhotonDistribution pq = pushforward(q, plan);
      for (int n = 0; n <= 16; ++n) {
        CHECK(std::abs(lhs.probs[n] - (alpha * pp.probs[n] +
                                       (1.0 - alpha) * pq.probs[n])) < 1e-15);
      }
    }
  }

  SUBCASE("uncovered massive bin is an error") {
    // bins 17..20 of Poisson(3) carry well over 1e-15 but have no rows
    PhotonDistribution wide = poisson(3.0, 20);
    ExtractionPlan narrow = identity;  // rows only up to 16
    CHECK_THROWS_AS(pushforward(wide, narrow), UncoveredBin);
  }
}

TEST_CASE("verify_plan accepts good plans and flags corrupted ones") {
  const ChannelParams params{0.3, 0.2};
  const int n_max = default_n_max(0.3);
  const PhotonDistribution source = match_distribution(params, n_max);
  const PhotonDistribution target = poisson(0.06, n_max);
  const ExtractionPlan plan = build_extraction_plan(source, target);
  CompositePlan composite = compose_with_base(plan, b_match(params));

  const PlanVerification good = verify_plan(composite, params);
  CHECK(good.pushforward_ok);
  CHECK(good.nonvacuum_ok);
  CHECK(good.structure_ok);
  CHECK(good.all_ok());

  // corrupt row 3: move everything to vacuum
  CompositePlan corrupted = composite;
  corrupted.rows[3].assign(corrupted.rows[3].size(), 0.0);
  corrupted.rows[3][0] = 1.0;
  const PlanVerification bad = verify_plan(corrupted, params);
  CHECK_FALSE(bad.structure_ok);
  REQUIRE(bad.structure_witness.has_value());
  CHECK(*bad.structure_witness == 3);
}

TEST_CASE("plan construction succeeds exactly when feasible on a grid") {
  for (int i = 1; i <= 50; ++i) {
    for (int j = 1; j <= 50; ++j) {
      const double mu = i / 50.0;
      const double eta = j / 50.0;
      const ChannelParams params{mu, eta};
      try {
        b_match(params);
      } catch (const FullBlockingRegime&) {
        continue;
      }
      const int n_max = default_n_max(mu);
      const DifferenceProfile profile = difference_profile(params, n_max);
      const bool feasible = feasibility_check(profile).feasible;
      const PhotonDistribution source = match_distribution(params, n_max);
      const PhotonDistribution target = poisson(mu * eta, n_max);
      bool built = false;
      try {
        const ExtractionPlan plan = build_extraction_plan(source, target);
        built = true;
        check_plan_invariants(plan);
        const PhotonDistribution pushed =
            oracles::push_through_rows(source, plan.rows);
        double tv = std::abs(pushed.tail_mass - target.tail_mass);
        for (int n = 0; n <= n_max; ++n) {
          CHECK(std::abs(pushed.probs[n] - target.probs[n]) < 1e-12);
          tv += std::abs(pushed.probs[n] - target.probs[n]);
        }
        CHECK(0.5 * tv < 1e-12);
      } catch (const InfeasibleTransport&) {
        built = false;
      }
      CHECK(built == feasible);
    }
  }
}

TEST_CASE("plan construction is deterministic") {
  const ChannelParams params{0.1, 0.1};
  const int n_max = default_n_max(0.1);
  const PhotonDistribution source = match_distribution(params, n_max);
  const PhotonDistribution target = poisson(0.01, n_max);
  const ExtractionPlan a = build_extraction_plan(source, target);
  const ExtractionPlan b = build_extraction_plan(source, target);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t n = 0; n < a.rows.size(); ++n) {
    REQUIRE(a.rows[n] == b.rows[n]);  // bit-identical
  }
}

TEST_CASE("plan text round-trips bit-exactly") {
  const ChannelParams params{0.1, 0.1};
  const int n_max = default_n_max(0.1);
  const PhotonDistribution source = match_distribution(params, n_max);
  const PhotonDistribution target = poisson(0.01, n_max);
  ExtractionPlan plan = build_extraction_plan(source, target);
  plan.eta = params.eta;
  CompositePlan composite = compose_with_base(plan, b_match(params));

  const std::string text = serialize_plan(composite);
  CHECK(text.rfind("# pns-plan mu=", 0) == 0);
  const CompositePlan parsed = parse_plan(text);
  CHECK(parsed.mu == composite.mu);
  CHECK(parsed.eta == composite.eta);
  CHECK(parsed.blocking_fraction == composite.blocking_fraction);
  REQUIRE(parsed.rows.size() == composite.rows.size());
  for (std::size_t n = 0; n < parsed.rows.size(); ++n) {
    REQUIRE(parsed.rows[n] == composite.rows[n]);
  }
  // serialize(parse(serialize(x))) is byte-stable
  CHECK(serialize_plan(parsed) == text);
}

TEST_CASE("plan parser rejects malformed input") {
  CHECK_THROWS_AS(parse_plan(std::string("no header\n")), InvalidParameter);
  CHECK_THROWS_AS(parse_plan(std::string("# pns-plan mu=0.1 eta=0.1 b=0.5\n"
                                         "2 3 0.5\n")),
                  InvalidParameter);  // m > n
}
