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

// Samplers shared by the unit tests and the acceptance binary.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "posmap/catalog.hpp"
#include "posmap/semigroup.hpp"

namespace posmap::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Mat3c random_hermitian(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Mat3c a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = Complex(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

inline Mat8 random_gaussian8(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat8 m;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = n(rng);
  return m;
}

/// Gaussian direction rescaled to the given operator norm.
inline Mat8 random_with_norm(Rng& rng, double norm) {
  const Mat8 m = random_gaussian8(rng);
  return m * (norm / operator_norm(m));
}

inline Mat3c haar_unitary(Rng& rng) { return random_su3(rng()); }

inline Mat3c phase_diag(double a, double b, double c) {
  Mat3c u = Mat3c::Zero();
  u(0, 0) = std::polar(1.0, a);
  u(1, 1) = std::polar(1.0, b);
  u(2, 2) = std::polar(1.0, c);
  return u;
}

inline Mat3c permutation_unitary(int which) {
  static const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  Mat3c u = Mat3c::Zero();
  for (int r = 0; r < 3; ++r) u(perms[which][r], r) = 1.0;
  return u;
}

/// Unitary whose adjoint action maps the range of the canonical projector to itself.
inline Mat3c stabilizer_unitary(CanonicalClass c, Rng& rng) {
  const double tau = 2.0 * std::numbers::pi;
  switch (c) {
    case CanonicalClass::p0:
    case CanonicalClass::one8:
      return haar_unitary(rng);
    case CanonicalClass::p1:
    case CanonicalClass::p4: {
      Mat3c u = Mat3c::Zero();
      u.topLeftCorner<2, 2>() = haar_unitary(rng).topLeftCorner<2, 2>().householderQr().householderQ();
      u(2, 2) = std::polar(1.0, uniform(rng, 0.0, tau));
      return u;
    }
    case CanonicalClass::p2:
      return phase_diag(uniform(rng, 0.0, tau), uniform(rng, 0.0, tau), uniform(rng, 0.0, tau)) *
             permutation_unitary(static_cast<int>(rng() % 6));
    case CanonicalClass::p3: {
      const double th = uniform(rng, 0.0, tau);
      const double flip = rng() % 2 ? -1.0 : 1.0;
      Mat3c u = Mat3c::Zero();
      const Complex ph = std::polar(1.0, uniform(rng, 0.0, tau));
      u(0, 0) = ph * std::cos(th);
      u(0, 1) = -flip * ph * std::sin(th);
      u(1, 0) = ph * std::sin(th);
      u(1, 1) = flip * ph * std::cos(th);
      u(2, 2) = std::polar(1.0, uniform(rng, 0.0, tau));
      return u;
    }
    case CanonicalClass::p5: {
      std::normal_distribution<double> n(0.0, 1.0);
      Eigen::Matrix3d g;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = n(rng);
      Eigen::Matrix3d q = g.householderQr().householderQ();
      return q.cast<Complex>();
    }
  }
  return Mat3c::Identity();
}

/// Unitary whose adjoint action fixes the range of the canonical projector pointwise.
inline Mat3c fixing_unitary(CanonicalClass c, Rng& rng) {
  const double tau = 2.0 * std::numbers::pi;
  switch (c) {
    case CanonicalClass::p0:
      return haar_unitary(rng);
    case CanonicalClass::p1: {
      Mat3c u = Mat3c::Zero();
      u.topLeftCorner<2, 2>() = haar_unitary(rng).topLeftCorner<2, 2>().householderQr().householderQ();
      u(2, 2) = std::polar(1.0, uniform(rng, 0.0, tau));
      return u;
    }
    case CanonicalClass::p2:
      return phase_diag(uniform(rng, 0.0, tau), uniform(rng, 0.0, tau), uniform(rng, 0.0, tau));
    case CanonicalClass::p3:
    case CanonicalClass::p4: {
      const double a = uniform(rng, 0.0, tau);
      return phase_diag(a, a, uniform(rng, 0.0, tau));
    }
    case CanonicalClass::p5:
    case CanonicalClass::one8:
      return Mat3c::Identity();
  }
  return Mat3c::Identity();
}

/// A member of Q_0(p): a convex combination (1 - s) p + sum s_k w_k of Lambda
/// members w_k that fix the range of p pointwise, so z = p + c with ||c|| <= s < 1.
inline Mat8 planted_q0(CanonicalClass c, Rng& rng) {
  const Mat8 p = canonical_projector(c);
  if (c == CanonicalClass::one8) return adjoint_rep(haar_unitary(rng));
  const double s = uniform(rng, 0.3, 0.9);
  std::vector<double> w(3);
  double sum = 0.0;
  for (auto& v : w) sum += (v = uniform(rng, 0.1, 1.0));
  Mat8 z = (1.0 - s) * p;
  for (std::size_t k = 0; k < w.size(); ++k) {
    Mat8 member = adjoint_rep(fixing_unitary(c, rng));
    if (c == CanonicalClass::p5 && k == 0) member = transpose_matrix();
    z += s * (w[k] / sum) * member;
  }
  return z;
}

struct Planted {
  Mat8 x;
  Mat8 z;
  int i = 0;
  int j = 0;
};

inline bool below(const Mat8& p, const Mat8& q) { return (q * p - p).norm() < 1e-12; }

/// x = g1 z g2 with z in Q_0(p_{i+j}), built so that e_x = p_j and y_x has
/// singular value 1 with multiplicity i. With k preserving p_j and g0 moving
/// p_j below p_{i+j}, x = g0^t z g0 k; the peripheral subspace of x is the
/// largest (g0 k g0^t)-invariant subspace inside p_{i+j}, which generic draws
/// keep equal to g0 p_j g0^t. Draws are validated and repeated when that fails.
/// Throws std::runtime_error when no valid draw is found.
inline Planted planted_instance(int i, int j, Rng& rng, int attempts = 400) {
  const auto cj = static_cast<CanonicalClass>(j);
  const auto target = static_cast<CanonicalClass>(i + j);
  const Mat8 pj = canonical_projector(cj);
  const Mat8 pt = canonical_projector(target);
  for (int a = 0; a < attempts; ++a) {
    const Mat8 g0 = adjoint_rep(stabilizer_unitary(target, rng) * permutation_unitary(static_cast<int>(rng() % 6)));
    if (!below(g0 * pj * g0.transpose(), pt)) continue;
    Planted out;
    out.i = i;
    out.j = j;
    out.z = planted_q0(target, rng);
    const Mat8 k = adjoint_rep(stabilizer_unitary(cj, rng));
    out.x = g0.transpose() * out.z * g0 * k;
    const Mat8 h = pj * out.x * pj;
    const Mat8 y = out.x - h;
    if ((pj * y).norm() > 1e-10 || (y * pj).norm() > 1e-10) continue;
    Eigen::EigenSolver<Mat8> es(y, false);
    if (es.eigenvalues().cwiseAbs().maxCoeff() > 1.0 - 1e-3) continue;
    Eigen::JacobiSVD<Mat8> svd(y);
    const auto& sv = svd.singularValues();
    int ones = 0;
    for (int n = 0; n < 8; ++n) ones += sv(n) > 1.0 - 1e-9;
    if (ones != i || (i < 8 && sv(std::min(i, 7)) > 1.0 - 1e-2 && sv(std::min(i, 7)) < 1.0 - 1e-9)) continue;
    return out;
  }
  throw std::runtime_error("no planted instance found for this (i, j)");
}

/// All (i, j) with i + j <= 5 that planted_instance can realize; (1, 3) and
/// (1, 4) have no valid draw.
inline std::vector<std::pair<int, int>> planted_pairs() {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j <= 5; ++j)
    for (int i = 0; i + j <= 5; ++i)
      if (!(i == 1 && (j == 3 || j == 4))) out.emplace_back(i, j);
  return out;
}

inline Mat8 random_planted_idempotent(Rng& rng) {
  const CanonicalClass classes[] = {CanonicalClass::p0, CanonicalClass::p1, CanonicalClass::p2,
                                    CanonicalClass::p3, CanonicalClass::p4, CanonicalClass::p5,
                                    CanonicalClass::one8};
  const CanonicalClass c = classes[rng() % 7];
  const Mat8 g = adjoint_rep(haar_unitary(rng));
  return g * canonical_projector(c) * g.transpose();
}

}  // namespace posmap::testing
