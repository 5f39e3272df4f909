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

#ifndef PNSLAB_ERRORS_HPP
#define PNSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pnslab {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument violates an operation's precondition.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A parameter left the regime an analysis is defined on.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// b_match exceeded 1: Eve can block every single-photon pulse outright and
// the vacuum-matching analysis is moot.
class FullBlockingRegime : public OutOfRange {
 public:
  FullBlockingRegime(const std::string& what, double b)
      : OutOfRange(what), b_match(b) {}
  double b_match;
};

// Bisection bracket endpoints do not straddle a sign change.
class NoRoot : public Error {
 public:
  NoRoot(const std::string& what, double f_low, double f_high)
      : Error(what), f_low(f_low), f_high(f_high) {}
  double f_low;
  double f_high;
};

// The CDF-dominance condition fails; `witness` is the first violating prefix.
class InfeasibleTransport : public Error {
 public:
  InfeasibleTransport(const std::string& what, int witness)
      : Error(what), witness(witness) {}
  int witness;
};

// Source and target disagree on the vacuum bin.
class MismatchedVacuum : public Error {
 public:
  using Error::Error;
};

// A bin carrying mass has no transition row in the plan.
class UncoveredBin : public Error {
 public:
  UncoveredBin(const std::string& what, int bin) : Error(what), bin(bin) {}
  int bin;
};

// Two simulation results cannot be compared (e.g. unequal pulse counts).
class IncompatibleResults : public Error {
 public:
  using Error::Error;
};

}  // namespace pnslab

#endif  // PNSLAB_ERRORS_HPP
