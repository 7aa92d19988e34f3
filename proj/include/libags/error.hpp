// Copyright 2026 The Authors.
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

#ifndef LIBAGS_ERROR_HPP_
#define LIBAGS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace libags {

// Base of every error thrown by the library. The CLI maps IoError to exit
// code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (CSV rows, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input parsed but violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Required column or key missing, or unknown key present.
class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Caller broke an operation precondition (k too large, zero epochs, ...).
class PreconditionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Gradient descent produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int epoch)
      : Error(what), epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

// Every candidate importance is zero; the allocation is undefined.
class NoPositiveImportance : public Error {
 public:
  using Error::Error;
};

}  // namespace libags

#endif  // LIBAGS_ERROR_HPP_
