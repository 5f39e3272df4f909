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

#include "pnslab/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pnslab/errors.hpp"
#include "pnslab/format.hpp"

namespace pnslab {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

void expect_header(std::istream& in, const std::string& want) {
  std::string line;
  if (!std::getline(in, line) || line != want) {
    throw InvalidParameter("expected CSV header '" + want + "'");
  }
}

std::vector<std::string> next_row(std::istream& in, std::size_t fields) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split_csv_line(line);
    if (row.size() != fields) {
      throw InvalidParameter("malformed CSV row '" + line + "'");
    }
    return row;
  }
  return {};
}

}  // namespace

void write_region_csv(const RegionGrid& grid, std::ostream& out) {
  out << "mu,eta,d1,feasible\n";
  for (std::size_t i = 0; i < grid.mu_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.eta_axis.size(); ++j) {
      const RegionCell& cell = grid.cells[i][j];
      out << format_g17(grid.mu_axis[i]) << ',' << format_g17(grid.eta_axis[j])
          << ',' << format_g17(cell.d1) << ',' << (cell.feasible ? 1 : 0)
          << '\n';
    }
  }
}

RegionGrid parse_region_csv(std::istream& in) {
  expect_header(in, "mu,eta,d1,feasible");
  RegionGrid grid;
  std::vector<std::vector<RegionCell>> rows;
  double current_mu = 0.0;
  for (;;) {
    const auto row = next_row(in, 4);
    if (row.empty()) break;
    const double mu = parse_double(row[0]);
    const double eta = parse_double(row[1]);
    RegionCell cell;
    cell.d1 = parse_double(row[2]);
    if (row[3] == "1") {
      cell.feasible = true;
    } else if (row[3] == "0") {
      cell.feasible = false;
    } else {
      throw InvalidParameter("feasible flag must be 0 or 1, got '" + row[3] +
                             "'");
    }
    if (grid.mu_axis.empty() || mu != current_mu) {
      grid.mu_axis.push_back(mu);
      current_mu = mu;
      rows.emplace_back();
    }
    if (grid.mu_axis.size() == 1) grid.eta_axis.push_back(eta);
    rows.back().push_back(cell);
  }
  grid.cells = std::move(rows);
  return grid;
}

void write_boundary_csv(const BoundaryCurve& curve, std::ostream& out) {
  out << "mu,eta0_exact,eta0_approx\n";
  for (const BoundarySample& s : curve.samples) {
    out << format_g17(s.mu) << ',' << format_g17(s.eta0_exact) << ','
        << format_g17(s.eta0_approx) << '\n';
  }
}

BoundaryCurve parse_boundary_csv(std::istream& in) {
  expect_header(in, "mu,eta0_exact,eta0_approx");
  BoundaryCurve curve;
  for (;;) {
    const auto row = next_row(in, 3);
    if (row.empty()) break;
    curve.samples.push_back(BoundarySample{
        parse_double(row[0]), parse_double(row[1]), parse_double(row[2])});
  }
  if (!curve.samples.empty()) {
    curve.mu_range = {curve.samples.front().mu, curve.samples.back().mu};
    curve.steps = static_cast<int>(curve.samples.size());
  }
  return curve;
}

void write_histogram_csv(const SimulationResult& result, std::ostream& out) {
  out << "n,count,empirical_p,analytic_p,z\n";
  const double pulses = static_cast<double>(result.config.pulses);
  for (std::size_t bin = 0; bin < result.counts.size(); ++bin) {
    const double empirical = static_cast<double>(result.counts[bin]) / pulses;
    out << bin << ',' << result.counts[bin] << ',' << format_g17(empirical)
        << ',' << format_g17(result.analytic.p(static_cast<int>(bin))) << ','
        << format_g17(result.per_bin_z[bin]) << '\n';
  }
}

std::vector<HistogramRow> parse_histogram_csv(std::istream& in) {
  expect_header(in, "n,count,empirical_p,analytic_p,z");
  std::vector<HistogramRow> rows;
  for (;;) {
    const auto row = next_row(in, 5);
    if (row.empty()) break;
    HistogramRow parsed;
    parsed.n = static_cast<int>(parse_double(row[0]));
    parsed.count = static_cast<std::uint64_t>(parse_double(row[1]));
    parsed.empirical_p = parse_double(row[2]);
    parsed.analytic_p = parse_double(row[3]);
    parsed.z = parse_double(row[4]);
    rows.push_back(parsed);
  }
  return rows;
}

}  // namespace pnslab
