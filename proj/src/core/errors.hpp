// Copyright 2026 The nestedgrover Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ngs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad sizes, widths, ranges or malformed input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A supplied object fails a structural check (non-unitary matrix, duplicate
// candidates, non-bijective mapping).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Arguments outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The premise of an algorithm does not hold for the given problem.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ngs
