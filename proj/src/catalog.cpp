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

#include "posmap/catalog.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "posmap/semigroup.hpp"

namespace posmap {

ChoiParams choi_params(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InputError("choi parameter t must lie in [0, 1]");
  const double d = 1.0 - t + t * t;
  ChoiParams p;
  p.a = (1.0 - t) * (1.0 - t) / d;
  p.b = t * t / d;
  p.c = 1.0 / d;
  p.t = t;
  return p;
}

LinearMap3 choi_map_callable(const ChoiParams& p) {
  if (!(p.a >= 0.0 && p.b >= 0.0 && p.c >= 0.0))
    throw InputError("choi map coefficients must be nonnegative");
  const double a = p.a, b = p.b, c = p.c;
  return [a, b, c](const Mat3c& x) {
    Mat3c out = -x;
    out(0, 0) = a * x(0, 0) + b * x(1, 1) + c * x(2, 2);
    out(1, 1) = c * x(0, 0) + a * x(1, 1) + b * x(2, 2);
    out(2, 2) = b * x(0, 0) + c * x(1, 1) + a * x(2, 2);
    return Mat3c(0.5 * out);
  };
}

MapMatrix choi_map(const ChoiParams& p) { return map_to_matrix(choi_map_callable(p)); }

MapMatrix choi_matrix(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InputError("choi_matrix: t must lie in [0, 1]");
  const double d = 1.0 - t + t * t;
  const double q = (1.0 - 4.0 * t + t * t) / (4.0 * d);
  const double r = std::sqrt(3.0) * (1.0 - t * t) / (4.0 * d);
  MapMatrix x = MapMatrix::Zero();
  for (int i : {0, 1, 3, 4, 5, 6}) x(i, i) = -0.5;
  x(2, 2) = q;
  x(7, 7) = q;
  x(2, 7) = -r;
  x(7, 2) = r;
  return x;
}

LinearMap3 s0_callable() {
  return [](const Mat3c& x) {
    const double h = 1.0 / std::sqrt(2.0);
    Mat3c out = Mat3c::Zero();
    out(0, 0) = 0.5 * (x(0, 0) + x(1, 1));
    out(1, 1) = out(0, 0);
    out(0, 2) = h * x(0, 2);
    out(1, 2) = h * x(2, 1);
    out(2, 0) = h * x(2, 0);
    out(2, 1) = h * x(1, 2);
    out(2, 2) = x(2, 2);
    return out;
  };
}

MapMatrix s0_matrix() {
  const double h = 1.0 / std::sqrt(2.0);
  Vec8 d;
  d << 0.0, 0.0, 0.0, h, h, h, -h, 1.0;
  return d.asDiagonal();
}

MapMatrix transpose_matrix() {
  Vec8 d;
  d << 1, -1, 1, 1, -1, 1, -1, 1;
  return d.asDiagonal();
}

Mat3c random_su3(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Mat3c z;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) z(i, j) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<Mat3c> qr(z);
  Mat3c q = qr.householderQ();
  const Mat3c r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  const Complex det = q.determinant();
  q *= std::pow(det, -1.0 / 3.0);
  return q;
}

namespace {

double parse_real(std::string_view s, std::string_view what) {
  std::string buf(s);
  std::istringstream in(buf);
  double v = 0.0;
  in >> v;
  if (buf.empty() || in.fail() || !in.eof()) throw InputError("malformed " + std::string(what) + ": '" + buf + "'");
  return v;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InputError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::optional<MapMatrix> resolve_generator(std::string_view spec) {
  if (spec == "s0") return s0_matrix();
  if (spec == "transpose") return transpose_matrix();
  if (spec == "identity") return MapMatrix::Identity();
  if (spec.starts_with("choi:")) {
    const auto arg = spec.substr(5);
    if (!arg.starts_with("t=")) throw InputError("choi generator expects 'choi:t=<value>'");
    return choi_matrix(parse_real(arg.substr(2), "choi parameter"));
  }
  if (spec.starts_with("adunitary:")) {
    const auto arg = spec.substr(10);
    if (!arg.starts_with("seed=")) throw InputError("adunitary generator expects 'adunitary:seed=<N>'");
    return adjoint_rep(random_su3(parse_uint(arg.substr(5), "adunitary seed")));
  }
  return std::nullopt;
}

std::vector<std::string> generator_names() {
  return {"choi:t=0", "choi:t=0.25", "s0", "transpose", "identity", "adunitary:seed=1"};
}

}  // namespace posmap
