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

#ifndef PNSLAB_FORMAT_HPP
#define PNSLAB_FORMAT_HPP

#include <string>

namespace pnslab {

// 17 significant digits: enough for any double to round-trip bit-exactly
// through strtod.
std::string format_g17(double v);

// strtod that insists on consuming the whole token; throws InvalidParameter.
double parse_double(const std::string& token);

}  // namespace pnslab

#endif  // PNSLAB_FORMAT_HPP
