// Copyright 2026 The gmnl Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace gmnl {

enum class ErrorKind {
  SelfLoop,
  IndexOutOfRange,
  BadDimension,
  NotCaterpillar,
  Disconnected,
  NonPrimeDimension,
  NotLinear,
  BadFactor,
  MemoryCap,
  NotNormalized,
  NotObservable,
  ScenarioMismatch,
  Signalling,
  ZeroProbability,
  OverlappingParties,
  UnknownFamily,
  UnknownLabel,
  BadParameter,
  BudgetExceeded,
  BadTrace,
  Parse,
  Internal,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SelfLoop: return "self_loop";
    case ErrorKind::IndexOutOfRange: return "index_out_of_range";
    case ErrorKind::BadDimension: return "bad_dimension";
    case ErrorKind::NotCaterpillar: return "not_a_caterpillar";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::NonPrimeDimension: return "non_prime_dimension";
    case ErrorKind::NotLinear: return "not_linear";
    case ErrorKind::BadFactor: return "bad_factor";
    case ErrorKind::MemoryCap: return "memory_cap";
    case ErrorKind::NotNormalized: return "not_normalized";
    case ErrorKind::NotObservable: return "not_observable";
    case ErrorKind::ScenarioMismatch: return "scenario_mismatch";
    case ErrorKind::Signalling: return "signalling";
    case ErrorKind::ZeroProbability: return "zero_probability";
    case ErrorKind::OverlappingParties: return "overlapping_parties";
    case ErrorKind::UnknownFamily: return "unknown_family";
    case ErrorKind::UnknownLabel: return "unknown_label";
    case ErrorKind::BadParameter: return "bad_parameter";
    case ErrorKind::BudgetExceeded: return "budget_exceeded";
    case ErrorKind::BadTrace: return "bad_trace";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gmnl
