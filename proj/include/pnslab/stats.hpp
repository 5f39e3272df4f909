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

#ifndef PNSLAB_STATS_HPP
#define PNSLAB_STATS_HPP

namespace pnslab {

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
// a > 0, x >= 0.  Series for x < a + 1, Lentz continued fraction otherwise.
double gamma_q(double a, double x);

// Survival function of the chi-squared distribution:
// P[X > x] = Q(df/2, x/2).
double chi_squared_sf(double x, int df);

}  // namespace pnslab

#endif  // PNSLAB_STATS_HPP
