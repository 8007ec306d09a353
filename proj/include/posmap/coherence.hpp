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
#include <functional>

#include "posmap/types.hpp"

namespace posmap {

/// Self-adjoint 3x3 complex matrix.
///
/// Construction from an arbitrary matrix checks ||A - A*||_HS against
/// kHermitianTol * max(1, ||A||_HS) and stores the symmetrized (A + A*)/2.
class Hermitian3 {
 public:
  static constexpr double kHermitianTol = 1e-12;

  Hermitian3() : m_(Mat3c::Zero()) {}
  explicit Hermitian3(const Mat3c& a);

  /// Skips validation. For values that are self-adjoint by construction.
  static Hermitian3 trusted(const Mat3c& a);

  const Mat3c& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  struct Trusted {};
  Hermitian3(const Mat3c& a, Trusted) : m_(a) {}
  Mat3c m_;
};

/// Coordinates (a0, avec) of a self-adjoint matrix in the normalized
/// Gell-Mann basis.
struct CoherenceVector {
  double a0 = 0.0;
  Vec8 avec = Vec8::Zero();
};

/// The nine normalized Gell-Mann matrices; index 0 is 1/sqrt(3) * identity.
struct GellMannBasis {
  std::array<Mat3c, 9> lambda;
  const Mat3c& operator[](int mu) const { return lambda[mu]; }
};

const GellMannBasis& gellmann_basis();

/// <A, B>_HS = tr A* B.
Complex hs_inner(const Mat3c& a, const Mat3c& b);

CoherenceVector to_coherence(const Hermitian3& a);
Hermitian3 from_coherence(const CoherenceVector& v);

/// S_x(lambda(a0, a)) = lambda(a0, x a).
Hermitian3 apply_map(const MapMatrix& x, const Hermitian3& a);

/// A linear map on M_3, called on self-adjoint arguments.
using LinearMap3 = std::function<Mat3c(const Mat3c&)>;

/// x_ij = tr lambda_i S(lambda_j). Rejects (InputError) maps that are not
/// unital, not trace-preserving or not Hermiticity-preserving to 1e-10.
MapMatrix map_to_matrix(const LinearMap3& s);

/// Matrix of the HS-adjoint map: S_x^* = S_{x^t}.
MapMatrix adjoint(const MapMatrix& x);

/// Largest singular value.
double operator_norm(const MapMatrix& x);

namespace detail {

/// Matrix lambda(0, w) built entrywise.
Mat3c traceless_from_bloch(const Vec8& w);

/// Smallest eigenvalue of lambda(0, w), closed form with a Newton polish.
double min_eigenvalue_traceless(const Vec8& w);

}  // namespace detail

}  // namespace posmap
