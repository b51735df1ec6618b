// Copyright 2026 The dicke-probe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICKE_ERROR_HPP
#define DICKE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dicke {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's precondition (bad index, negative count).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A state or operator was used with a basis of the wrong particle sector.
class SectorMismatch : public Error {
 public:
  using Error::Error;
};

/// Requested Fock space is larger than the configured dimension cap.
class DimensionCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: non-Hermitian input, Krylov breakdown, degenerate
/// ground level.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dicke

#endif  // DICKE_ERROR_HPP
