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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "posmap/coherence.hpp"

namespace posmap {

/// Unit vector in C^3 together with the Bloch part of its projector,
/// P = lambda(1/sqrt(3), bloch), ||bloch|| = sqrt(2/3).
struct PureState {
  Vec3c ket = Vec3c::UnitX();
  Vec8 bloch = Vec8::Zero();

  /// Normalizes and fixes the global phase (first nonzero component real
  /// and positive). Throws InputError on a zero vector.
  static PureState from_ket(const Vec3c& ket);

  /// ket = (cos t1, sin t1 cos t2 e^{i f1}, sin t1 sin t2 e^{i f2}).
  static PureState from_angles(const std::array<double, 4>& angles);

  Mat3c projector() const { return ket * ket.adjoint(); }
};

/// (cos t1, sin t1 cos t2 e^{i f1}, sin t1 sin t2 e^{i f2}); unit norm.
Vec3c ket_from_angles(const std::array<double, 4>& angles);

/// Bloch vector of |ket><ket| (ket assumed unit norm).
Vec8 bloch_of_ket(const Vec3c& ket);

/// tr P_m S_x(P_n) = 1/3 + <m, x n>.
double pair_expectation(const MapMatrix& x, const PureState& p, const PureState& q);

enum class PositivityVerdict { CertifiedPositive, NumericallyPositive, NotPositive };

const char* to_string(PositivityVerdict v);

struct PositivityReport {
  PositivityVerdict verdict = PositivityVerdict::NotPositive;
  /// Certified: the lower bound 1/3 - (2/3)||x||. Otherwise the best value found.
  double min_value = 0.0;
  /// (P, Q) with tr P S_x(Q) = min_value.
  std::optional<std::pair<PureState, PureState>> witness;
  long evaluations = 0;
  std::uint64_t seed = 0;
  double norm = 0.0;
  std::string note;

  bool positive() const { return verdict != PositivityVerdict::NotPositive; }
};

/// Search settings for min_expectation. The defaults are the documented
/// engineering choices; budget counts objective evaluations.
struct SearchSettings {
  long budget = 200000;
  std::uint64_t seed = 0;
  int grid_points = 12;
  int starts = 64;
  int halvings = 40;
};

struct MinExpectation {
  double value = 0.0;
  PureState p;
  PureState q;
  long evaluations = 0;
};

/// Raised when the budget does not cover the coarse grid; carries the best
/// point seen so far.
class BudgetExhaustedError : public SearchFailure {
 public:
  BudgetExhaustedError(const std::string& what, MinExpectation partial)
      : SearchFailure(what), partial_(std::move(partial)) {}
  const MinExpectation& partial() const { return partial_; }

 private:
  MinExpectation partial_;
};

/// Minimizes tr P S_x(Q) over pure P, Q. For fixed Q the optimal P is the
/// bottom eigenvector of S_x(Q), so the search runs over Q only: a coarse
/// angle grid followed by multi-start coordinate descent with step halving.
MinExpectation min_expectation(const MapMatrix& x, const SearchSettings& settings);
MinExpectation min_expectation(const MapMatrix& x, long budget, std::uint64_t seed);

/// Membership test for the positive set.
///   ||x|| <= 1/2          -> CertifiedPositive (no search)
///   ||x|| > 1 + tol       -> NotPositive (norm bound), witness attached if found
///   otherwise              search; min >= -tol -> NumericallyPositive
/// tol must lie in [1e-10, 1e-4].
PositivityReport is_positive(const MapMatrix& x, double tol = 1e-8, long budget = 200000,
                             std::uint64_t seed = 0);

/// Smallest eigenvalue of S_x(A^2) - S_x(A)^2; nonnegative for positive maps.
double kadison_schwarz_violation(const MapMatrix& x, const Hermitian3& a);

}  // namespace posmap
