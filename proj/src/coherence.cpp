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

#include "posmap/coherence.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace posmap {

namespace {

constexpr Complex kI{0.0, 1.0};

GellMannBasis make_basis() {
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  GellMannBasis b;
  for (auto& m : b.lambda) m.setZero();

  b.lambda[0].diagonal().setConstant(s3);

  b.lambda[1](0, 1) = s2;
  b.lambda[1](1, 0) = s2;

  b.lambda[2](0, 1) = -kI * s2;
  b.lambda[2](1, 0) = kI * s2;

  b.lambda[3](0, 0) = s2;
  b.lambda[3](1, 1) = -s2;

  b.lambda[4](0, 2) = s2;
  b.lambda[4](2, 0) = s2;

  b.lambda[5](0, 2) = -kI * s2;
  b.lambda[5](2, 0) = kI * s2;

  b.lambda[6](1, 2) = s2;
  b.lambda[6](2, 1) = s2;

  b.lambda[7](1, 2) = -kI * s2;
  b.lambda[7](2, 1) = kI * s2;

  b.lambda[8](0, 0) = s6;
  b.lambda[8](1, 1) = s6;
  b.lambda[8](2, 2) = -2.0 * s6;
  return b;
}

}  // namespace

Hermitian3::Hermitian3(const Mat3c& a) {
  const double asym = (a - a.adjoint()).norm();
  const double scale = std::max(1.0, a.norm());
  if (!(asym <= kHermitianTol * scale)) {
    std::ostringstream msg;
    msg << "matrix is not self-adjoint: ||A - A*||_HS = " << asym
        << " exceeds " << kHermitianTol * scale;
    throw InputError(msg.str());
  }
  m_ = 0.5 * (a + a.adjoint());
}

Hermitian3 Hermitian3::trusted(const Mat3c& a) { return Hermitian3(a, Trusted{}); }

const GellMannBasis& gellmann_basis() {
  static const GellMannBasis basis = make_basis();
  return basis;
}

Complex hs_inner(const Mat3c& a, const Mat3c& b) { return (a.adjoint() * b).trace(); }

CoherenceVector to_coherence(const Hermitian3& a) {
  const auto& lam = gellmann_basis();
  CoherenceVector v;
  v.a0 = (lam[0] * a.matrix()).trace().real();
  for (int k = 1; k <= 8; ++k) v.avec(k - 1) = (lam[k] * a.matrix()).trace().real();
  return v;
}

Hermitian3 from_coherence(const CoherenceVector& v) {
  const auto& lam = gellmann_basis();
  Mat3c m = v.a0 * lam[0];
  for (int k = 1; k <= 8; ++k) m += v.avec(k - 1) * lam[k];
  return Hermitian3::trusted(m);
}

Hermitian3 apply_map(const MapMatrix& x, const Hermitian3& a) {
  CoherenceVector v = to_coherence(a);
  v.avec = x * v.avec;
  return from_coherence(v);
}

MapMatrix map_to_matrix(const LinearMap3& s) {
  constexpr double kTol = 1e-10;
  const auto& lam = gellmann_basis();

  const Mat3c one = Mat3c::Identity();
  const double unital_err = (s(one) - one).norm();
  if (!(unital_err <= kTol)) {
    std::ostringstream msg;
    msg << "map is not unital: ||S(1) - 1||_HS = " << unital_err;
    throw InputError(msg.str());
  }

  MapMatrix x;
  for (int j = 1; j <= 8; ++j) {
    const Mat3c out = s(lam[j]);
    const double tr_err = std::abs(out.trace());
    if (!(tr_err <= kTol)) {
      std::ostringstream msg;
      msg << "map is not trace-preserving: |tr S(lambda_" << j << ")| = " << tr_err;
      throw InputError(msg.str());
    }
    const double herm_err = (out - out.adjoint()).norm();
    if (!(herm_err <= kTol)) {
      std::ostringstream msg;
      msg << "map does not preserve self-adjointness on lambda_" << j << " (defect "
          << herm_err << ")";
      throw InputError(msg.str());
    }
    for (int i = 1; i <= 8; ++i) x(i - 1, j - 1) = (lam[i] * out).trace().real();
  }
  return x;
}

MapMatrix adjoint(const MapMatrix& x) { return x.transpose(); }

double operator_norm(const MapMatrix& x) {
  Eigen::JacobiSVD<Mat8> svd(x);
  return svd.singularValues()(0);
}

namespace detail {

Mat3c traceless_from_bloch(const Vec8& w) {
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  Mat3c m;
  m(0, 0) = w(2) * s2 + w(7) * s6;
  m(1, 1) = -w(2) * s2 + w(7) * s6;
  m(2, 2) = -2.0 * w(7) * s6;
  m(0, 1) = Complex(w(0), -w(1)) * s2;
  m(0, 2) = Complex(w(3), -w(4)) * s2;
  m(1, 2) = Complex(w(5), -w(6)) * s2;
  m(1, 0) = std::conj(m(0, 1));
  m(2, 0) = std::conj(m(0, 2));
  m(2, 1) = std::conj(m(1, 2));
  return m;
}

double min_eigenvalue_traceless(const Vec8& w) {
  const double p = 0.5 * w.squaredNorm();
  if (p < 1e-300) return 0.0;

  const double s2 = 1.0 / std::sqrt(2.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  const double d0 = w(2) * s2 + w(7) * s6;
  const double d1 = -w(2) * s2 + w(7) * s6;
  const double d2 = -2.0 * w(7) * s6;
  const Complex m01 = Complex(w(0), -w(1)) * s2;
  const Complex m02 = Complex(w(3), -w(4)) * s2;
  const Complex m12 = Complex(w(5), -w(6)) * s2;
  const double det = d0 * d1 * d2 + 2.0 * (m01 * m12 * std::conj(m02)).real() -
                     d0 * std::norm(m12) - d1 * std::norm(m02) - d2 * std::norm(m01);

  const double r = std::sqrt(p / 3.0);
  const double c = std::clamp(det / (2.0 * r * r * r), -1.0, 1.0);
  const double phi = std::acos(c) / 3.0;
  double mu = 2.0 * r * std::cos(phi + 2.0 * std::numbers::pi / 3.0);

  for (int it = 0; it < 2; ++it) {
    const double f = mu * mu * mu - p * mu - det;
    const double df = 3.0 * mu * mu - p;
    if (std::abs(df) <= 1e-6 * p) break;
    mu -= f / df;
  }
  return mu;
}

}  // namespace detail

}  // namespace posmap
