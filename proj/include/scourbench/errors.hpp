// Copyright 2026 The scourbench Authors.
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

#ifndef SCOURBENCH_ERRORS_HPP_
#define SCOURBENCH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace scourbench {

// Every library failure derives from Error so the CLI can map categories to
// exit codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data could not be read or does not match the expected schema.
class DataError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

// An equation was asked to run without a parameter it needs.
class IncompleteInputsError : public DataError {
 public:
  IncompleteInputsError(std::string parameter, std::string equation)
      : DataError("incomplete inputs: " + equation + " requires " + parameter),
        parameter_(std::move(parameter)),
        equation_(std::move(equation)) {}

  const std::string& parameter() const noexcept { return parameter_; }
  const std::string& equation() const noexcept { return equation_; }

 private:
  std::string parameter_;
  std::string equation_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerical failures: out-of-domain arguments, failed fits, degenerate
// sensitivity set-ups.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class FitError : public NumericError {
 public:
  FitError(const std::string& what, double best_loglik)
      : NumericError(what), best_loglik_(best_loglik) {}
  double best_loglik() const noexcept { return best_loglik_; }

 private:
  double best_loglik_;
};

class SparseBinError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateBaselineError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace scourbench

#endif  // SCOURBENCH_ERRORS_HPP_
