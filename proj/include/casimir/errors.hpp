// Copyright 2026 The casimir-sphere Authors.
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

namespace casimir {

// Base of everything the library throws on purpose. The CLI maps the
// subclasses onto exit codes (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (negative permittivity, z <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A truncated series cannot meet the requested tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// Quadrature or mode sum failed to converge under its hard caps.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// Evaluation point too close to the sphere surface.
class SurfaceSingularity : public DomainError {
 public:
  using DomainError::DomainError;
};

// Mode function requested with one point inside and one outside.
class SideMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

// A per-polarization denominator of the mode coefficients vanished.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

// Fit-order or asymptotic-order ladder spread exceeds the requested accuracy.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Extraction noise larger than the extracted force.
class NoiseDominated : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace casimir
