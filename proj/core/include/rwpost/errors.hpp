// Copyright 2026 rwpost authors.
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

#ifndef RWPOST_ERRORS_HPP_
#define RWPOST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rwpost {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation point outside the declared parameter interval or x-support.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Maximum likelihood fit did not converge.
class FitError : public Error {
public:
  explicit FitError(const std::string& what) : Error(what) {}
};

// Observed information non-positive at the optimum.
class CurvatureError : public Error {
public:
  explicit CurvatureError(const std::string& what) : Error(what) {}
};

// All centered scores are zero; the weighted statistic is undefined.
class DegenerateScoreError : public Error {
public:
  explicit DegenerateScoreError(const std::string& what) : Error(what) {}
};

// Prior density vanishes at the fitted parameter.
class PriorSupportError : public Error {
public:
  explicit PriorSupportError(const std::string& what) : Error(what) {}
};

// (model, prior) pair has no registered closed-form posterior.
class ConjugacyError : public Error {
public:
  explicit ConjugacyError(const std::string& what) : Error(what) {}
};

// Quadrature underflow, zero normalizer, and similar breakdowns.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

// Malformed configuration or identifier.
class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

}  // namespace rwpost

#endif  // RWPOST_ERRORS_HPP_
