// Copyright 2026 The posmap Authors
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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace posmap {

using Complex = std::complex<double>;
using Mat3c = Eigen::Matrix3cd;
using Vec3c = Eigen::Vector3cd;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec8 = Eigen::Matrix<double, 8, 1>;

/// 8x8 real matrix x representing the unital, trace-preserving map S_x.
using MapMatrix = Mat8;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (non-Hermitian matrix, bad tolerance...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The matrix cannot belong to the positive set (norm or spectrum violation).
class NotInLambdaError : public Error {
 public:
  using Error::Error;
};

/// Input is internally inconsistent with a claimed structure (wrong
/// idempotent, failed verification of a reduction...).
class InconsistentInputError : public Error {
 public:
  using Error::Error;
};

/// A numerical search ran out of budget without meeting its target.
class SearchFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace posmap
