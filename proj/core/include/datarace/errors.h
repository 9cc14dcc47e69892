// Copyright 2026 The Datarace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DATARACE_ERRORS_H_
#define DATARACE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace datarace {

// An argument lies outside the mathematical domain of an operation
// (error rate outside (0,1), non-positive exponent, k <= 1, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// The inputs are valid but the hypothesis an operation is stated under does
// not hold (e.g. asking for the trade-war ordering outside the mixed regime).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace datarace

#endif  // DATARACE_ERRORS_H_
