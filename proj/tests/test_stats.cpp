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

#include "pnslab/stats.hpp"

#include <cmath>

#include "doctest.h"
#include "pnslab/errors.hpp"

using namespace pnslab;

TEST_CASE("chi-squared survival: closed forms for even df") {
  // df = 2: sf(x) = e^{-x/2}
  for (double x : {0.1, 1.0, 5.991, 13.8, 40.0}) {
    CHECK(chi_squared_sf(x, 2) ==
          doctest::Approx(std::exp(-0.5 * x)).epsilon(1e-12));
  }
  // df = 4: sf(x) = e^{-x/2} (1 + x/2)
  for (double x : {0.5, 3.0, 13.2767, 30.0}) {
    CHECK(chi_squared_sf(x, 4) ==
          doctest::Approx(std::exp(-0.5 * x) * (1.0 + 0.5 * x))
              .epsilon(1e-12));
  }
  // df = 6: sf(x) = e^{-x/2} (1 + x/2 + x^2/8)
  CHECK(chi_squared_sf(10.0, 6) ==
        doctest::Approx(std::exp(-5.0) * (1.0 + 5.0 + 12.5)).epsilon(1e-12));
}

TEST_CASE("chi-squared survival: erfc route for df = 1") {
  for (double x : {0.02, 0.455, 3.841, 10.83}) {
    CHECK(chi_squared_sf(x, 1) ==
          doctest::Approx(std::erfc(std::sqrt(0.5 * x))).epsilon(1e-12));
  }
}

TEST_CASE("chi-squared survival: textbook quantiles") {
  CHECK(chi_squared_sf(3.841458820694124, 1) ==
        doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi_squared_sf(5.991464547107979, 2) ==
        doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi_squared_sf(13.276704135987622, 4) ==
        doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("chi-squared survival edges") {
  CHECK(chi_squared_sf(0.0, 3) == 1.0);
  CHECK(chi_squared_sf(1e4, 3) < 1e-100);
  CHECK_THROWS_AS(chi_squared_sf(-1.0, 3), InvalidParameter);
  CHECK_THROWS_AS(chi_squared_sf(1.0, 0), InvalidParameter);
}

TEST_CASE("gamma_q sanity") {
  CHECK(gamma_q(1.0, 0.0) == 1.0);
  // Q(1, x) = e^{-x}
  for (double x : {0.2, 1.0, 3.0, 20.0}) {
    CHECK(gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gamma_q(0.0, 1.0), InvalidParameter);
}
