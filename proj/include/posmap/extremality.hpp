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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posmap/positivity.hpp"
#include "posmap/semigroup.hpp"

namespace posmap {

/// A pure-state pair with 1/3 + <m, x n> near zero.
struct ActivePair {
  PureState m;
  PureState n;
  double value = 0.0;
};

struct ActiveSet {
  std::vector<ActivePair> pairs;
  long evaluations = 0;
};

struct ActiveSettings {
  double tol = 1e-6;
  double deflation_radius = 0.05;
  long budget = 200000;
  std::uint64_t seed = 0;
  /// Stop after this many consecutive restarts without a new pair.
  int patience = 16;
  std::size_t max_pairs = 400;
};

/// Raised by active_pairs when a pair with value below -tol turns up.
class PositivityViolation : public NotInLambdaError {
 public:
  PositivityViolation(const std::string& what, ActivePair witness)
      : NotInLambdaError(what), witness_(std::move(witness)) {}
  const ActivePair& witness() const { return witness_; }

 private:
  ActivePair witness_;
};

/// Multi-start search for the zeros of the positivity constraints, with a
/// deflation penalty around pairs already found.
ActiveSet active_pairs(const MapMatrix& x, const ActiveSettings& settings = {});

/// Rank of span{vec(m n^t)} over the active pairs (at most 64).
int active_rank(const ActiveSet& set, double threshold = 1e-8);

enum class ExtremalityVerdict { CertifiedExtreme, NotExtreme, Inconclusive };
const char* to_string(ExtremalityVerdict v);

struct ExtremalityReport {
  ExtremalityVerdict verdict = ExtremalityVerdict::Inconclusive;
  int active_rank = 0;
  std::optional<Mat8> direction;
  double epsilon = 0.0;
  ActiveSet active;
  int directions_tried = 0;
  std::uint64_t seed = 0;
  long budget = 0;
  std::string note;
};

struct ExtremalitySettings {
  ActiveSettings active;
  double positivity_tol = 1e-8;
  long positivity_budget = 200000;
  double rank_threshold = 1e-8;
  int max_directions = 16;
  int bisection_steps = 12;
  double max_epsilon = 0.1;
  /// Segments shorter than this are not accepted as evidence of a
  /// decomposition: a quadratic violation of size ~eps^2 would hide below
  /// the positivity tolerance.
  double min_epsilon = 1e-3;
};

/// Extreme-point test in the positive set.
///   active span of rank 64           -> CertifiedExtreme
///   x +- eps d positive for some d   -> NotExtreme (d, eps)
///   otherwise                        -> Inconclusive
ExtremalityReport extreme_in_lambda(const MapMatrix& x, const ExtremalitySettings& settings = {});

enum class CandidateTag { JordanIso, StronglyErgodicHalf, Q0P8Form, Other };
const char* to_string(CandidateTag t);

struct CandidateEvidence {
  double norm = 0.0;
  CanonicalClass e_class = CanonicalClass::p0;
  int q_index = 0;
  double orthogonality_defect = 0.0;       ///< ||x x^t - 1||
  double half_orthogonality_defect = 0.0;  ///< ||4 x x^t - 1||
  std::optional<double> reduction_residual;
  std::optional<double> reduced_y_norm;
  std::optional<CanonicalClass> reduced_class;
  bool degraded = false;
  /// e_x outside {0, P8, 1_8} classes rules out extremality among all positive maps.
  bool ext0_excluded = false;
  std::string note;
};

struct CandidateGroup {
  CandidateTag tag = CandidateTag::Other;
  CandidateEvidence evidence;
};

/// Sorts x into the groups where extremal non-trivial maps can live.
CandidateGroup classify_candidate(const MapMatrix& x, long budget = 100000, std::uint64_t seed = 0);

}  // namespace posmap
