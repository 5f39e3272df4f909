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
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pnslab/errors.hpp"
#include "pnslab/format.hpp"
#include "pnslab/matching.hpp"

namespace pnslab {

namespace {

// Remaining mass below this counts as an exhausted bin.
constexpr double kConsumeEps = 1e-15;
// End-of-construction residuals up to this size are parked on the diagonal.
constexpr double kResidualCap = 1e-14;

std::vector<double> identity_row(int n) {
  std::vector<double> row(n + 1, 0.0);
  row[n] = 1.0;
  return row;
}

}  // namespace

ExtractionPlan build_extraction_plan(const PhotonDistribution& source,
                                     const PhotonDistribution& target) {
  const int n_max = source.n_max();
  if (n_max != target.n_max()) {
    throw InvalidParameter("source and target must share n_max");
  }
  if (std::abs(source.probs[0] - target.probs[0]) > kSignTol) {
    throw MismatchedVacuum("vacuum bins differ by " +
                           format_g17(source.probs[0] - target.probs[0]));
  }
  // CDF dominance (prefix sums of source - target must stay <= 0).
  {
    double prefix = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      prefix += source.probs[n] - target.probs[n];
      if (prefix > kSignTol) {
        throw InfeasibleTransport(
            "target does not dominate source at prefix " + std::to_string(n),
            n);
      }
    }
  }

  // Consumed amounts; amounts[n] covers m in [0, n].
  std::vector<std::vector<double>> amounts(n_max + 1);
  for (int n = 0; n <= n_max; ++n) amounts[n].assign(n + 1, 0.0);

  // The vacuum bins are equal by precondition, so bin 0 maps to itself and
  // every output bin m >= 1 is fed from source bins n >= m.
  amounts[0][0] = source.probs[0];

  int n = 1;
  double rem_src = n_max >= 1 ? source.probs[1] : 0.0;
  for (int m = 1; m <= n_max; ++m) {
    double need = target.probs[m];
    while (need > kConsumeEps && n <= n_max) {
      if (rem_src <= kConsumeEps) {
        ++n;
        if (n <= n_max) rem_src = source.probs[n];
        continue;
      }
      if (n < m) {
        // Dominance holds only up to kSignTol, so dust-sized mass can be
        // stranded below the current output bin.  Keep it in place.
        amounts[n][n] += rem_src;
        rem_src = 0.0;
        continue;
      }
      const double take = std::min(rem_src, need);
      amounts[n][m] += take;
      rem_src -= take;
      need -= take;
    }
  }
  // Park whatever the sweep left unconsumed on the diagonal.
  for (int k = 1; k <= n_max; ++k) {
    double consumed = 0.0;
    for (double v : amounts[k]) consumed += v;
    const double residual = (k == n ? rem_src : source.probs[k] - consumed);
    if (residual > kResidualCap) {
      throw InfeasibleTransport("unconsumed source mass " +
                                    format_g17(residual) + " at bin " +
                                    std::to_string(k),
                                k);
    }
    if (residual > 0.0) amounts[k][k] += residual;
  }

  ExtractionPlan plan;
  plan.mu = source.mean_label.value_or(0.0);
  plan.eta = 0.0;
  plan.rows.resize(n_max + 1);
  for (int k = 0; k <= n_max; ++k) {
    double row_sum = 0.0;
    for (double v : amounts[k]) row_sum += v;
    if (row_sum <= 0.0) {
      plan.rows[k] = identity_row(k);
      continue;
    }
    plan.rows[k].assign(k + 1, 0.0);
    for (int m = 0; m <= k; ++m) plan.rows[k][m] = amounts[k][m] / row_sum;
  }
  return plan;
}

CompositePlan compose_with_base(const ExtractionPlan& plan, double b) {
  if (!(b >= 0.0) || !(b <= 1.0)) {
    throw InvalidParameter("blocking fraction must lie in [0, 1], got " +
                           std::to_string(b));
  }
  CompositePlan composite;
  composite.blocking_fraction = b;
  composite.mu = plan.mu;
  composite.eta = plan.eta;
  composite.rows.resize(plan.rows.size() + 1);
  composite.rows[0] = {1.0};
  composite.rows[1] = {b, 1.0 - b};
  // The base attack maps n -> n-1 deterministically for n >= 2, then the
  // redistribution row for n-1 applies.
  for (int k = 1; k < static_cast<int>(plan.rows.size()); ++k) {
    std::vector<double> row = plan.rows[k];
    row.push_back(0.0);  // delivered count never reaches the origin n = k+1
    composite.rows[k + 1] = std::move(row);
  }
  return composite;
}

namespace {

PhotonDistribution pushforward_rows(
    const PhotonDistribution& dist,
    const std::vector<std::vector<double>>& rows) {
  const int n_max = dist.n_max();
  PhotonDistribution out;
  out.probs.assign(n_max + 1, 0.0);
  out.tail_mass = dist.tail_mass;
  for (int n = 0; n <= n_max; ++n) {
    const double mass = dist.probs[n];
    if (mass == 0.0) continue;
    if (n >= static_cast<int>(rows.size())) {
      if (mass < 1e-15) continue;  // truncation dust is exempt
      throw UncoveredBin(
          "bin " + std::to_string(n) + " carries mass " + format_g17(mass) +
              " but the plan has no row for it",
          n);
    }
    const std::vector<double>& row = rows[n];
    for (int m = 0; m < static_cast<int>(row.size()) && m <= n_max; ++m) {
      if (row[m] != 0.0) out.probs[m] += mass * row[m];
    }
  }
  return out;
}

}  // namespace

PhotonDistribution pushforward(const PhotonDistribution& dist,
                               const ExtractionPlan& plan) {
  return pushforward_rows(dist, plan.rows);
}

PhotonDistribution pushforward(const PhotonDistribution& dist,
                               const CompositePlan& plan) {
  return pushforward_rows(dist, plan.rows);
}

PlanVerification verify_plan(const CompositePlan& plan,
                             const ChannelParams& params) {
  validate(params);
  PlanVerification report;

  const int dist_n_max = plan.n_max();
  const PhotonDistribution src = poisson(params.mu, dist_n_max);
  const PhotonDistribution want = poisson(params.mu * params.eta, dist_n_max);
  const PhotonDistribution got = pushforward(src, plan);

  for (int m = 0; m <= dist_n_max; ++m) {
    const double dev = std::abs(got.probs[m] - want.probs[m]);
    if (dev > report.max_bin_deviation) report.max_bin_deviation = dev;
  }
  report.pushforward_ok = report.max_bin_deviation <= kSignTol;

  report.nonvacuum_deviation =
      std::abs((1.0 - got.probs[0]) - (1.0 - std::exp(-params.mu * params.eta)));
  report.nonvacuum_ok = report.nonvacuum_deviation <= kSignTol;

  report.structure_ok = true;
  for (int n = 2; n <= plan.n_max() && report.structure_ok; ++n) {
    const std::vector<double>& row = plan.rows[n];
    if (!row.empty() && row[0] != 0.0) {
      report.structure_ok = false;
      report.structure_witness = n;
      break;
    }
    for (int m = n; m < static_cast<int>(row.size()); ++m) {
      if (row[m] != 0.0) {
        report.structure_ok = false;
        report.structure_witness = n;
        break;
      }
    }
  }
  return report;
}

void serialize_plan(const CompositePlan& plan, std::ostream& out) {
  out << "# pns-plan mu=" << format_g17(plan.mu) << " eta="
      << format_g17(plan.eta) << " b=" << format_g17(plan.blocking_fraction)
      << "\n";
  for (int n = 0; n <= plan.n_max(); ++n) {
    const std::vector<double>& row = plan.rows[n];
    for (int m = 0; m < static_cast<int>(row.size()); ++m) {
      if (row[m] != 0.0) {
        out << n << " " << m << " " << format_g17(row[m]) << "\n";
      }
    }
  }
}

std::string serialize_plan(const CompositePlan& plan) {
  std::ostringstream out;
  serialize_plan(plan, out);
  return out.str();
}

CompositePlan parse_plan(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# pns-plan ", 0) != 0) {
    throw InvalidParameter("missing '# pns-plan' header");
  }
  CompositePlan plan;
  {
    std::istringstream header(line.substr(11));
    std::string field;
    while (header >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) {
        throw InvalidParameter("malformed plan header field '" + field + "'");
      }
      const std::string key = field.substr(0, eq);
      const double value = parse_double(field.substr(eq + 1));
      if (key == "mu") {
        plan.mu = value;
      } else if (key == "eta") {
        plan.eta = value;
      } else if (key == "b") {
        plan.blocking_fraction = value;
      } else {
        throw InvalidParameter("unknown plan header field '" + key + "'");
      }
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream entry(line);
    int n = -1, m = -1;
    std::string prob;
    if (!(entry >> n >> m >> prob) || n < 0 || m < 0 || m > n) {
      throw InvalidParameter("malformed plan entry '" + line + "'");
    }
    if (n >= static_cast<int>(plan.rows.size())) plan.rows.resize(n + 1);
    if (plan.rows[n].empty()) plan.rows[n].assign(n + 1, 0.0);
    plan.rows[n][m] = parse_double(prob);
  }
  for (int n = 0; n <= plan.n_max(); ++n) {
    if (plan.rows[n].empty()) {
      throw InvalidParameter("plan row " + std::to_string(n) + " is missing");
    }
  }
  return plan;
}

CompositePlan parse_plan(const std::string& text) {
  std::istringstream in(text);
  return parse_plan(in);
}

}  // namespace pnslab
