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
// Figure-data CSV.  All floating point is printed at 17 significant digits
// so emitted files parse back bit-identically; header row mandatory, LF
// line endings.

#ifndef PNSLAB_IO_HPP
#define PNSLAB_IO_HPP

#include <iosfwd>

#include "pnslab/boundary.hpp"
#include "pnslab/montecarlo.hpp"

namespace pnslab {

// `mu,eta,d1,feasible` with feasible in {0, 1}; row-major in mu.
void write_region_csv(const RegionGrid& grid, std::ostream& out);
RegionGrid parse_region_csv(std::istream& in);

// `mu,eta0_exact,eta0_approx` (skipped samples are not part of the file).
void write_boundary_csv(const BoundaryCurve& curve, std::ostream& out);
BoundaryCurve parse_boundary_csv(std::istream& in);

// `n,count,empirical_p,analytic_p,z`, one row per histogram bin.
void write_histogram_csv(const SimulationResult& result, std::ostream& out);

struct HistogramRow {
  int n = 0;
  std::uint64_t count = 0;
  double empirical_p = 0.0;
  double analytic_p = 0.0;
  double z = 0.0;
};
std::vector<HistogramRow> parse_histogram_csv(std::istream& in);

}  // namespace pnslab

#endif  // PNSLAB_IO_HPP
