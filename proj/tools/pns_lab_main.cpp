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
// pns-lab: analyses of the extended photon-number-splitting attack on
// weak-coherent-pulse quantum key distribution.  Data goes to --out (or
// stdout), diagnostics to stderr.  Exit codes: 0 success, 1 domain errors
// (infeasible point, missing root, full-blocking regime), 2 usage errors.

#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "pnslab/boundary.hpp"
#include "pnslab/distributions.hpp"
#include "pnslab/errors.hpp"
#include "pnslab/format.hpp"
#include "pnslab/gain.hpp"
#include "pnslab/io.hpp"
#include "pnslab/matching.hpp"
#include "pnslab/montecarlo.hpp"
#include "pnslab/transport.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Stream selected by --out; standard output when no path is given.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw pnslab::InvalidParameter("cannot open output file '" + path +
                                       "'");
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int run_analyze(double mu, double eta, int n_max_flag,
                const std::string& out_path, const std::string& plan_path) {
  const pnslab::ChannelParams params{mu, eta};
  const int n_max = n_max_flag > 0 ? n_max_flag : pnslab::default_n_max(mu);
  OutputTarget target(out_path);
  std::ostream& out = target.stream();

  out << "mu = " << pnslab::format_g17(mu) << "\n";
  out << "eta = " << pnslab::format_g17(eta) << "\n";
  out << "n_max = " << n_max << "\n";

  double blocking = 0.0;
  try {
    blocking = pnslab::b_match(params);
  } catch (const pnslab::FullBlockingRegime& e) {
    out << "b_match = " << pnslab::format_g17(e.b_match) << "\n";
    out << "regime = full-blocking (b_match > 1)\n";
    out << "feasibility = NOT-APPLICABLE\n";
    std::cerr << "pns-lab: " << e.what() << "\n";
    return kExitDomain;
  }
  out << "b_match = " << pnslab::format_g17(blocking) << "\n";

  const pnslab::DifferenceProfile profile =
      pnslab::difference_profile(params, n_max);
  out << "n d_n\n";
  for (int n = 0; n <= profile.n_max(); ++n) {
    out << n << " " << pnslab::format_g17(profile.d[n]) << "\n";
  }
  out << "tail_diff = " << pnslab::format_g17(profile.tail_diff) << "\n";
  if (profile.turning_index) {
    out << "turning_index = " << *profile.turning_index << "\n";
  }

  const pnslab::FeasibilityReport feasibility =
      pnslab::feasibility_check(profile);
  if (!feasibility.feasible) {
    out << "feasibility = INFEASIBLE witness n=" << *feasibility.witness
        << "\n";
    std::cerr << "pns-lab: redistribution infeasible at (" << mu << ", " << eta
              << "): CDF dominance fails first at n=" << *feasibility.witness
              << "\n";
    return kExitDomain;
  }
  out << "feasibility = FEASIBLE\n";

  const pnslab::PhotonDistribution source =
      pnslab::match_distribution(params, n_max);
  const pnslab::PhotonDistribution plan_target =
      pnslab::poisson(mu * eta, n_max);
  const pnslab::ExtractionPlan plan =
      pnslab::build_extraction_plan(source, plan_target);
  pnslab::CompositePlan composite =
      pnslab::compose_with_base(plan, std::min(blocking, 1.0));
  composite.mu = mu;
  composite.eta = eta;

  const pnslab::PlanVerification verdict =
      pnslab::verify_plan(composite, params);
  out << "plan_rows = " << composite.rows.size() << "\n";
  out << "plan_pushforward_max_dev = "
      << pnslab::format_g17(verdict.max_bin_deviation) << "\n";
  out << "plan_checks = " << (verdict.all_ok() ? "ok" : "FAILED") << "\n";

  if (!plan_path.empty()) {
    std::ofstream plan_file(plan_path, std::ios::binary);
    if (!plan_file) {
      throw pnslab::InvalidParameter("cannot open plan file '" + plan_path +
                                     "'");
    }
    pnslab::serialize_plan(composite, plan_file);
  }
  return verdict.all_ok() ? kExitOk : kExitDomain;
}

int run_region(double mu_min, double mu_max, double eta_min, double eta_max,
               int steps, const std::string& out_path) {
  const pnslab::RegionGrid grid =
      pnslab::region_grid({mu_min, mu_max}, {eta_min, eta_max}, steps);
  OutputTarget target(out_path);
  pnslab::write_region_csv(grid, target.stream());
  return kExitOk;
}

int run_boundary(double mu_min, double mu_max, int steps,
                 const std::string& out_path) {
  const pnslab::BoundaryCurve curve =
      pnslab::boundary_curve({mu_min, mu_max}, steps);
  for (const auto& [mu, reason] : curve.skipped) {
    std::cerr << "pns-lab: skipped mu=" << pnslab::format_g17(mu) << ": "
              << reason << "\n";
  }
  OutputTarget target(out_path);
  pnslab::write_boundary_csv(curve, target.stream());
  return curve.skipped.empty() ? kExitOk : kExitDomain;
}

int run_gain(double eta, double sifting, const std::string& out_path) {
  const pnslab::MuOptResult opt = pnslab::mu_opt(eta, sifting);
  OutputTarget target(out_path);
  std::ostream& out = target.stream();
  out << "eta = " << pnslab::format_g17(eta) << "\n";
  out << "sifting_factor = " << pnslab::format_g17(sifting) << "\n";
  out << "mu_opt = " << pnslab::format_g17(opt.mu_opt) << "\n";
  out << "bound_at_opt = " << pnslab::format_g17(opt.bound_at_opt) << "\n";

  const pnslab::GainReport report =
      pnslab::gain_bound({opt.mu_opt, eta}, sifting);
  out << "s_multi = " << pnslab::format_g17(report.s_multi) << "\n";
  out << "p_exp = " << pnslab::format_g17(report.p_exp) << "\n";

  const pnslab::WorkingPointReport point =
      pnslab::working_point_check({opt.mu_opt, eta});
  out << "d1_at_opt = " << pnslab::format_g17(point.d1) << "\n";
  out << "working_point_feasible = " << (point.feasible ? "yes" : "no")
      << "\n";
  if (point.eta0) {
    out << "eta0 = " << pnslab::format_g17(*point.eta0) << "\n";
    out << "margin = " << pnslab::format_g17(*point.margin) << "\n";
  }
  for (const std::string& note : point.notes) {
    out << "note = " << note << "\n";
  }
  return kExitOk;
}

int run_simulate(double mu, double eta, std::uint64_t pulses,
                 std::uint64_t seed, const std::string& mode_name,
                 const std::string& out_path) {
  pnslab::SimulationConfig config;
  config.params = {mu, eta};
  config.pulses = pulses;
  config.seed = seed;
  if (mode_name == "lossy") {
    config.mode = pnslab::SimulationMode::kLossyChannel;
  } else if (mode_name == "base") {
    config.mode = pnslab::SimulationMode::kBasePns;
  } else {
    config.mode = pnslab::SimulationMode::kExtendedPns;
  }

  const pnslab::SimulationResult result = pnslab::simulate(config);
  OutputTarget target(out_path);
  pnslab::write_histogram_csv(result, target.stream());

  const pnslab::ChiSquaredReport fit = pnslab::goodness_of_fit_report(result);
  std::cerr << "mode = " << mode_name << "\n";
  std::cerr << "pulses = " << pulses << "\n";
  std::cerr << "seed = " << seed << "\n";
  std::cerr << "nonvacuum_count = " << result.nonvacuum_count << "\n";
  std::cerr << "tagged_count = " << result.tagged_count << "\n";
  std::cerr << "vacuum_violations = " << result.vacuum_violations << "\n";
  std::cerr << "tv_distance = "
            << pnslab::format_g17(result.tv_distance_to_analytic) << "\n";
  std::cerr << "chi2_statistic = " << pnslab::format_g17(fit.statistic)
            << "\n";
  std::cerr << "chi2_df = " << fit.df << "\n";
  std::cerr << "chi2_p_value = " << pnslab::format_g17(fit.p_value) << "\n";
  std::cerr << "distinguishable_from_analytic = "
            << (fit.distinguishable ? "yes" : "no") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pns-lab: photon-number statistics of the extended photon-number-"
      "splitting attack on weak-coherent-pulse QKD"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand(
      "analyze", "Vacuum matching, difference profile, feasibility, plan");
  double a_mu = 0.0, a_eta = 0.0;
  int a_nmax = 0;
  std::string a_out, a_plan;
  analyze->add_option("--mu", a_mu, "mean photon number")
      ->required()
      ->check(CLI::PositiveNumber);
  analyze->add_option("--eta", a_eta, "transmission efficiency in (0, 1]")
      ->required()
      ->check(CLI::Range(1e-300, 1.0));
  analyze->add_option("--nmax", a_nmax, "truncation (default: tail < 1e-15)")
      ->check(CLI::Range(2, 512));
  analyze->add_option("--out", a_out, "output path (default stdout)");
  analyze->add_option("--plan-out", a_plan, "write the composite plan here");

  auto* region = app.add_subcommand(
      "region", "d1 sign grid over a (mu, eta) rectangle as CSV");
  double r_mu_min = 0.0, r_mu_max = 0.0, r_eta_min = 0.0, r_eta_max = 0.0;
  int r_steps = 0;
  std::string r_out;
  region->add_option("--mu-min", r_mu_min)
      ->required()
      ->check(CLI::PositiveNumber);
  region->add_option("--mu-max", r_mu_max)
      ->required()
      ->check(CLI::PositiveNumber);
  region->add_option("--eta-min", r_eta_min)
      ->required()
      ->check(CLI::PositiveNumber);
  region->add_option("--eta-max", r_eta_max)
      ->required()
      ->check(CLI::PositiveNumber);
  region->add_option("--steps", r_steps)
      ->required()
      ->check(CLI::Range(2, 100000));
  region->add_option("--out", r_out, "output path (default stdout)");

  auto* boundary = app.add_subcommand(
      "boundary", "critical transmission eta0(mu), exact and approximate");
  double b_mu_min = 0.0, b_mu_max = 0.0;
  int b_steps = 0;
  std::string b_out;
  boundary->add_option("--mu-min", b_mu_min)
      ->required()
      ->check(CLI::PositiveNumber);
  boundary->add_option("--mu-max", b_mu_max)
      ->required()
      ->check(CLI::PositiveNumber);
  boundary->add_option("--steps", b_steps)
      ->required()
      ->check(CLI::Range(2, 100000));
  boundary->add_option("--out", b_out, "output path (default stdout)");

  auto* gain = app.add_subcommand(
      "gain", "optimal mean photon number and gain bound at a given eta");
  double g_eta = 0.0, g_sifting = 0.5;
  std::string g_out;
  gain->add_option("--eta", g_eta)->required()->check(CLI::Range(1e-300, 1.0));
  gain->add_option("--sifting", g_sifting, "sifting factor (default 0.5)")
      ->check(CLI::Range(1e-300, 1.0));
  gain->add_option("--out", g_out, "output path (default stdout)");

  auto* simulate = app.add_subcommand(
      "simulate", "pulse-level Monte Carlo with histogram CSV and fit report");
  double s_mu = 0.0, s_eta = 0.0;
  std::uint64_t s_pulses = 0, s_seed = 0;
  std::string s_mode, s_out;
  simulate->add_option("--mu", s_mu)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--eta", s_eta)
      ->required()
      ->check(CLI::Range(1e-300, 1.0));
  simulate->add_option("--pulses", s_pulses)
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", s_seed, "RNG seed (runs are reproducible)")
      ->required();
  simulate->add_option("--mode", s_mode, "lossy | base | extended")
      ->required()
      ->check(CLI::IsMember({"lossy", "base", "extended"}));
  simulate->add_option("--out", s_out, "histogram path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      return run_analyze(a_mu, a_eta, a_nmax, a_out, a_plan);
    }
    if (region->parsed()) {
      return run_region(r_mu_min, r_mu_max, r_eta_min, r_eta_max, r_steps,
                        r_out);
    }
    if (boundary->parsed()) {
      return run_boundary(b_mu_min, b_mu_max, b_steps, b_out);
    }
    if (gain->parsed()) {
      return run_gain(g_eta, g_sifting, g_out);
    }
    if (simulate->parsed()) {
      return run_simulate(s_mu, s_eta, s_pulses, s_seed, s_mode, s_out);
    }
  } catch (const pnslab::InvalidParameter& e) {
    std::cerr << "pns-lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pnslab::Error& e) {
    std::cerr << "pns-lab: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
