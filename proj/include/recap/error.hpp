// Copyright (c) 2026 The recap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace recap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A physical or configuration input violates its invariant.
class ValidationError : public Error {
public:
  ValidationError(std::string field, const std::string &message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string &field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Request exceeds what the implementation supports (e.g. polynomial order ceiling).
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// Caller broke an API precondition (mismatched representations, wrong tags, ...).
class ContractError : public Error {
public:
  using Error::Error;
};

class NumericError : public Error {
public:
  using Error::Error;
};

class DivergentIntegralError : public NumericError {
public:
  using NumericError::NumericError;
};

/// Too much probability reached the absorbing layer of a simulation box.
class StateLeftBoxError : public NumericError {
public:
  StateLeftBoxError(double absorbed, const std::string &message)
      : NumericError(message), absorbed_(absorbed) {}

  double absorbed_norm() const noexcept { return absorbed_; }

private:
  double absorbed_;
};

/// A recapture curve never crossed its threshold inside the trusted time range.
class BeyondHorizonError : public Error {
public:
  BeyondHorizonError(double lower_bound, const std::string &message)
      : Error(message), lower_bound_(lower_bound) {}

  /// Recapture time is at least this (dimensionless).
  double lower_bound() const noexcept { return lower_bound_; }

private:
  double lower_bound_;
};

} // namespace recap
