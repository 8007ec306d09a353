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
#include <string_view>
#include <vector>

#include "posmap/coherence.hpp"

namespace posmap {

/// Coefficients of the generalized Choi map. The map carries a global 1/2
/// factor, so it is bistochastic exactly when a + b + c = 2.
struct ChoiParams {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
  std::optional<double> t;
};

/// a(t) = (1-t)^2 / D, b(t) = t^2 / D, c(t) = 1 / D with D = 1 - t + t^2.
ChoiParams choi_params(double t);

/// The generalized Choi map as a callable on M_3. Requires a, b, c >= 0.
LinearMap3 choi_map_callable(const ChoiParams& p);

/// Matrix of the generalized Choi map. Throws InputError when a + b + c != 2.
MapMatrix choi_map(const ChoiParams& p);

/// Closed-form matrix x_t of the Choi family, t in [0, 1].
MapMatrix choi_matrix(double t);

/// The map fixing E_33, averaging the upper 2x2 diagonal and damping the
/// third row/column by 1/sqrt(2) (with a swap on the (2,3) entries).
LinearMap3 s0_callable();

/// diag(0, 0, 0, 1/sqrt2, 1/sqrt2, 1/sqrt2, -1/sqrt2, 1).
MapMatrix s0_matrix();

/// Matrix of the transposition A -> A^t: sign flips on lambda_2, lambda_5, lambda_7.
MapMatrix transpose_matrix();

/// Haar-random unitary in SU(3) drawn from a seeded generator.
Mat3c random_su3(std::uint64_t seed);

/// Resolves a generator name: "choi:t=<real>", "s0", "transpose",
/// "identity", "adunitary:seed=<N>". Returns nullopt for unknown names;
/// throws InputError for a known generator with malformed arguments.
std::optional<MapMatrix> resolve_generator(std::string_view spec);

/// Example generator names, for listings.
std::vector<std::string> generator_names();

}  // namespace posmap
