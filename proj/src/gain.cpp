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

#include "pnslab/boundary.hpp"
#include "pnslab/errors.hpp"
#include "pnslab/format.hpp"
#include "pnslab/matching.hpp"

namespace pnslab {

namespace {

constexpr double kMuSearchHigh = 5.0;
constexpr double kMuTol = 1e-10;

double bound_value(double mu, double eta, double sifting) {
  return sifting * ((1.0 + mu) * std::exp(-mu) - std::exp(-mu * eta));
}

// d(bound)/dmu up to the positive sifting factor.
double bound_slope(double mu, double eta) {
  return eta * std::exp(-mu * eta) - mu * std::exp(-mu);
}

void check_sifting(double sifting) {
  if (!(sifting > 0.0) || !(sifting <= 1.0)) {
    throw InvalidParameter("sifting factor must lie in (0, 1], got " +
                           format_g17(sifting));
  }
}

}  // namespace

GainReport gain_bound(const ChannelParams& params, double sifting_factor) {
  validate(params);
  check_sifting(sifting_factor);
  GainReport report;
  report.mu = params.mu;
  report.eta = params.eta;
  report.sifting_factor = sifting_factor;
  report.s_multi = 1.0 - (1.0 + params.mu) * std::exp(-params.mu);
  report.p_exp = 1.0 - std::exp(-params.mu * params.eta);
  report.bound = bound_value(params.mu, params.eta, sifting_factor);
  return report;
}

MuOptResult mu_opt(double eta, double sifting_factor) {
  if (!(eta > 0.0) || !(eta <= 1.0)) {
    throw InvalidParameter("eta must lie in (0, 1], got " + format_g17(eta));
  }
  check_sifting(sifting_factor);

  // Coarse scan for the bracketing interval of the first slope sign change;
  // the slope equals eta > 0 at mu = 0, so the first change brackets the
  // maximum.
  constexpr int kScanSteps = 4096;
  double lo = 0.0;
  double hi = kMuSearchHigh;
  bool bracketed = false;
  double prev_mu = 0.0;
  for (int i = 1; i <= kScanSteps; ++i) {
    const double mu = kMuSearchHigh * static_cast<double>(i) / kScanSteps;
    if (bound_slope(mu, eta) <= 0.0) {
      lo = prev_mu;
      hi = mu;
      bracketed = true;
      break;
    }
    prev_mu = mu;
  }
  MuOptResult result;
  if (!bracketed) {
    // Monotone increasing on the whole interval; optimum at the edge.
    result.mu_opt = kMuSearchHigh;
    result.bound_at_opt = bound_value(kMuSearchHigh, eta, sifting_factor);
    return result;
  }
  while (hi - lo > kMuTol) {
    const double mid = 0.5 * (lo + hi);
    if (bound_slope(mid, eta) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.mu_opt = 0.5 * (lo + hi);
  result.bound_at_opt = bound_value(result.mu_opt, eta, sifting_factor);
  return result;
}

WorkingPointReport working_point_check(const ChannelParams& params) {
  validate(params);
  WorkingPointReport report;
  report.mu = params.mu;
  report.eta = params.eta;
  report.d1 = d1_exact(params.mu, params.eta);
  report.feasible = report.d1 <= 0.0;

  try {
    report.b_match = b_match(params);
  } catch (const FullBlockingRegime& e) {
    report.notes.push_back(
        "full-blocking regime: b_match = " + format_g17(e.b_match) +
        " > 1, vacuum matching moot (plain PNS attack blocks every single)");
  }
  try {
    report.eta0 = eta0_exact(params.mu);
    report.margin = *report.eta0 - params.eta;
  } catch (const NoRoot& e) {
    report.notes.push_back(std::string("critical line not bracketed: ") +
                           e.what());
  }
  report.approx_valid = params.mu < 4.0 / 3.0;
  if (!report.approx_valid) {
    report.notes.push_back("eta0 approximation out of range (mu >= 4/3)");
  }
  if (params.eta > 0.75) {
    report.notes.push_back(
        "eta > 3/4: redistribution sufficiency argument not certified here");
  }
  return report;
}

}  // namespace pnslab
