// Copyright 2026 The zetalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the supported domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested exactly at a pole (zeta at s = 1, Q at s = 0).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The eta-based zeta method is singular where 2^(1-s) = 1.
class SingularityGuardError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// |zeta(s)| fell below tolerance while dividing by it.
class NearZeroDivisorError : public Error {
 public:
  using Error::Error;
};

/// Oracle or desk-scale size limit exceeded.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// Allocation budget exceeded, or an exact counter overflowed its storage.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Sign-change bracketing failed.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// x lies too close to a prime power, where psi jumps.
class JumpProximityError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace zetalab
