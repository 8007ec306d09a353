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
#include <string_view>

#include "posmap/coherence.hpp"

namespace posmap {

/// The seven canonical diagonal idempotents, one per orbit under unitary
/// conjugation: 0, P8, P38, P138, P1238, P13468, 1_8.
enum class CanonicalClass { p0, p1, p2, p3, p4, p5, one8 };

const char* to_string(CanonicalClass c);
std::optional<CanonicalClass> class_from_string(std::string_view s);
int class_rank(CanonicalClass c);
/// Class of the given rank; throws InconsistentInputError for ranks 6, 7 and
/// anything outside [0, 8].
CanonicalClass class_of_rank(int rank);
Mat8 canonical_projector(CanonicalClass c);

struct IdempotentRecord {
  Mat8 e = Mat8::Zero();
  int rank = 0;
  CanonicalClass canonical_class = CanonicalClass::p0;

  /// ||P - P^t|| of the raw spectral projector before symmetrization.
  double symmetrization_error = 0.0;
  /// True when some power x^n, n <= 4096, came within 1e-4 of e.
  bool witness_found = false;
  int witness_power = 0;
  double witness_distance = 0.0;
  /// Set by callers that established positivity of x beforehand.
  bool membership_verified = false;
};

/// Idempotent of the closure of {x^k}: spectral projector onto the
/// eigenvalues of modulus >= 1 - tol, obtained from a reordered complex Schur
/// form, then symmetrized and checked (e^2 = e, e = e^t, ex = xe).
/// Throws NotInLambdaError when x is not a contraction with semisimple
/// peripheral spectrum.
IdempotentRecord idempotent_of(const MapMatrix& x, double tol = 1e-8);

/// Rank (eigenvalues >= 1/2) and canonical class of a symmetric idempotent.
IdempotentRecord rank_class(const Mat8& e, double tol = 1e-8);

struct Decomposition {
  Mat8 h = Mat8::Zero();
  Mat8 y = Mat8::Zero();
  IdempotentRecord e;

  double cross_residual = 0.0;        ///< max of ||e x e^perp||, ||e^perp x e||
  double group_residual = 0.0;        ///< max of ||h^t h - e||, ||h h^t - e||
  double y_norm = 0.0;
  double y_spectral_radius = 0.0;
  double y_power64_norm = 0.0;
};

/// x = h + y with h = e x e and y the remainder, supported on e^perp.
/// Throws InconsistentInputError when the cross blocks exceed tol or
/// h is not a partial isometry onto e.
Decomposition decompose(const MapMatrix& x, const IdempotentRecord& e, double tol = 1e-8);

struct QIndex {
  int index = 0;                ///< multiplicity of the singular value 1 of y
  double y_norm = 0.0;
  bool boundary = false;        ///< a counted singular value sits strictly below 1
  bool consistent = true;       ///< rank(e) + index avoids 6, 7 and 8 (index 0 for ranks 5, 8)
};

/// Q_i index of a decomposition: singular values of y within tol of 1.
/// Throws NotInLambdaError when a singular value exceeds 1 + tol.
QIndex q_index(const Decomposition& d, double tol = 1e-6);
QIndex q_index(const MapMatrix& x, double tol = 1e-6);

/// Adjoint representation g_ij = tr lambda_i U lambda_j U*. Requires U
/// unitary to 1e-10.
Mat8 adjoint_rep(const Mat3c& u);

/// exp(i sum_k theta_k lambda_k).
Mat3c su3_exp(const Vec8& theta);

/// Generators of the adjoint action: Ad(exp(i s lambda_k)) = exp(s A_k).
const std::array<Mat8, 8>& adjoint_generators();

struct OrbitSettings {
  long budget = 100000;
  std::uint64_t seed = 0;
  int starts = 32;
  double success_residual = 1e-6;
};

struct OrbitFit {
  Mat8 g = Mat8::Identity();
  Mat3c u = Mat3c::Identity();
  double residual = 0.0;
  long evaluations = 0;
};

class OrbitSearchFailed : public SearchFailure {
 public:
  OrbitSearchFailed(const std::string& what, OrbitFit best)
      : SearchFailure(what), best_(std::move(best)) {}
  const OrbitFit& best() const { return best_; }

 private:
  OrbitFit best_;
};

/// Finds g = Ad(U) with g p_r g^t = e for the canonical projector p_r of e's
/// class. Multi-start coordinate descent in a local SU(3) chart, polished by
/// Levenberg-Marquardt. Throws OrbitSearchFailed when the best residual is
/// not below settings.success_residual.
OrbitFit conjugate_to_canonical(const IdempotentRecord& e, const OrbitSettings& settings = {});

struct ReductionResult {
  Mat8 g1 = Mat8::Identity();
  Mat8 z = Mat8::Zero();
  Mat8 g2 = Mat8::Identity();
  CanonicalClass source_class = CanonicalClass::p0;   ///< class of e_x (p_j)
  CanonicalClass target_class = CanonicalClass::p0;   ///< p_{i+j}
  int i = 0;
  double residual = 0.0;
  double orbit_residual = 0.0;
  double z_y_norm = 0.0;
};

/// Writes x in Q_i(p_j), i + j <= 5, as g1 z g2 with z in Q_0(p_{i+j}). Non-canonical e_x
/// is first conjugated to its canonical projector.
ReductionResult reduce_canonical(const MapMatrix& x, const OrbitSettings& settings = {});

}  // namespace posmap
