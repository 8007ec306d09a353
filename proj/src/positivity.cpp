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

#include "posmap/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "posmap/parallel.hpp"

namespace posmap {

namespace {

using Angles = std::array<double, 4>;

// Value of min_P tr P S_x(Q) for Q given by angles.
double objective(const MapMatrix& x, const Angles& a) {
  const Vec8 w = x * bloch_of_ket(ket_from_angles(a));
  return 1.0 / 3.0 + detail::min_eigenvalue_traceless(w);
}

struct LocalResult {
  double value = 0.0;
  Angles angles{};
  long evaluations = 0;
};

LocalResult coordinate_descent(const MapMatrix& x, Angles start, double start_value,
                               const Angles& base_step, int max_halvings, long budget) {
  LocalResult r{start_value, start, 0};
  double scale = 1.0;
  int halvings = 0;
  while (halvings < max_halvings && r.evaluations + 8 <= budget) {
    bool improved = false;
    for (int c = 0; c < 4; ++c) {
      for (double sign : {1.0, -1.0}) {
        Angles trial = r.angles;
        trial[c] += sign * scale * base_step[c];
        const double v = objective(x, trial);
        ++r.evaluations;
        if (v < r.value) {
          r.value = v;
          r.angles = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      scale *= 0.5;
      ++halvings;
    }
  }
  return r;
}

MinExpectation finish(const MapMatrix& x, const Angles& q_angles, long evaluations) {
  MinExpectation out;
  out.q = PureState::from_angles(q_angles);
  const Mat3c sq = Mat3c::Identity() / 3.0 + detail::traceless_from_bloch(x * out.q.bloch);
  Eigen::SelfAdjointEigenSolver<Mat3c> eig(sq);
  out.p = PureState::from_ket(eig.eigenvectors().col(0));
  out.value = pair_expectation(x, out.p, out.q);
  out.evaluations = evaluations;
  return out;
}

}  // namespace

Vec3c ket_from_angles(const std::array<double, 4>& a) {
  const double s1 = std::sin(a[0]);
  Vec3c k;
  k(0) = std::cos(a[0]);
  k(1) = std::polar(s1 * std::cos(a[1]), a[2]);
  k(2) = std::polar(s1 * std::sin(a[1]), a[3]);
  return k;
}

Vec8 bloch_of_ket(const Vec3c& k) {
  const double r2 = std::sqrt(2.0);
  const double r6 = std::sqrt(6.0);
  const Complex z01 = std::conj(k(0)) * k(1);
  const Complex z02 = std::conj(k(0)) * k(2);
  const Complex z12 = std::conj(k(1)) * k(2);
  const double n0 = std::norm(k(0));
  const double n1 = std::norm(k(1));
  const double n2 = std::norm(k(2));
  Vec8 b;
  b << r2 * z01.real(), r2 * z01.imag(), (n0 - n1) / r2, r2 * z02.real(), r2 * z02.imag(),
      r2 * z12.real(), r2 * z12.imag(), (n0 + n1 - 2.0 * n2) / r6;
  return b;
}

PureState PureState::from_ket(const Vec3c& ket) {
  const double nrm = ket.norm();
  if (!(nrm > 0.0)) throw InputError("pure state from a zero vector");
  Vec3c k = ket / nrm;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(k(i)) > 1e-14) {
      k *= std::polar(1.0, -std::arg(k(i)));
      k(i) = std::abs(k(i));
      break;
    }
  }
  PureState s;
  s.ket = k;
  s.bloch = bloch_of_ket(k);
  return s;
}

PureState PureState::from_angles(const std::array<double, 4>& angles) {
  return from_ket(ket_from_angles(angles));
}

double pair_expectation(const MapMatrix& x, const PureState& p, const PureState& q) {
  return 1.0 / 3.0 + p.bloch.dot(x * q.bloch);
}

const char* to_string(PositivityVerdict v) {
  switch (v) {
    case PositivityVerdict::CertifiedPositive:
      return "CertifiedPositive";
    case PositivityVerdict::NumericallyPositive:
      return "NumericallyPositive";
    case PositivityVerdict::NotPositive:
      return "NotPositive";
  }
  return "?";
}

MinExpectation min_expectation(const MapMatrix& x, const SearchSettings& s) {
  if (s.budget < 1000) throw InputError("min_expectation: budget must be at least 1000");
  if (s.grid_points < 2 || s.starts < 1) throw InputError("min_expectation: bad search settings");

  const int g = s.grid_points;
  const double theta_step = 0.5 * std::numbers::pi / (g - 1);
  const double phi_step = 2.0 * std::numbers::pi / g;
  const long grid_size = static_cast<long>(g) * g * g * g;

  auto grid_angles = [&](long idx) {
    Angles a;
    const long f2 = idx % g;
    const long f1 = (idx / g) % g;
    const long t2 = (idx / (g * g)) % g;
    const long t1 = idx / (static_cast<long>(g) * g * g);
    a[0] = t1 * theta_step;
    a[1] = t2 * theta_step;
    a[2] = f1 * phi_step;
    a[3] = f2 * phi_step;
    return a;
  };

  const long grid_evals = std::min(grid_size, s.budget);
  std::vector<std::pair<double, long>> grid(grid_evals);
  for (long i = 0; i < grid_evals; ++i) grid[i] = {objective(x, grid_angles(i)), i};

  if (grid_evals < grid_size) {
    const auto best = *std::min_element(grid.begin(), grid.end());
    std::ostringstream msg;
    msg << "budget " << s.budget << " exhausted before the coarse grid (" << grid_size
        << " points) completed";
    throw BudgetExhaustedError(msg.str(), finish(x, grid_angles(best.second), grid_evals));
  }

  const int grid_starts = std::min<long>(s.starts / 2, grid_size);
  std::partial_sort(grid.begin(), grid.begin() + grid_starts, grid.end());

  struct Start {
    Angles angles;
    double value;
  };
  std::vector<Start> starts;
  starts.reserve(s.starts);
  for (int i = 0; i < grid_starts; ++i) starts.push_back({grid_angles(grid[i].second), grid[i].first});

  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> theta(0.0, 0.5 * std::numbers::pi);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
  long evaluations = grid_size;
  while (static_cast<int>(starts.size()) < s.starts) {
    Angles a{theta(rng), theta(rng), phi(rng), phi(rng)};
    starts.push_back({a, objective(x, a)});
    ++evaluations;
  }

  const long remaining = std::max(0L, s.budget - evaluations);
  const long per_start = remaining / static_cast<long>(starts.size());
  const Angles base_step{theta_step, theta_step, phi_step, phi_step};

  std::vector<LocalResult> results(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    results[i] = coordinate_descent(x, starts[i].angles, starts[i].value, base_step, s.halvings,
                                    per_start);
  });

  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    evaluations += results[i].evaluations;
    if (results[i].value < results[best].value) best = i;
  }
  return finish(x, results[best].angles, evaluations);
}

MinExpectation min_expectation(const MapMatrix& x, long budget, std::uint64_t seed) {
  SearchSettings s;
  s.budget = budget;
  s.seed = seed;
  return min_expectation(x, s);
}

PositivityReport is_positive(const MapMatrix& x, double tol, long budget, std::uint64_t seed) {
  if (!(tol >= 1e-10 && tol <= 1e-4)) throw InputError("is_positive: tol must lie in [1e-10, 1e-4]");

  PositivityReport rep;
  rep.seed = seed;
  rep.norm = operator_norm(x);

  if (rep.norm <= 0.5 + 1e-12) {
    rep.verdict = PositivityVerdict::CertifiedPositive;
    rep.min_value = 1.0 / 3.0 - (2.0 / 3.0) * rep.norm;
    rep.note = "operator norm <= 1/2";
    return rep;
  }

  const bool norm_violation = rep.norm > 1.0 + tol;
  MinExpectation m;
  if (norm_violation) {
    try {
      m = min_expectation(x, budget, seed);
    } catch (const BudgetExhaustedError& e) {
      m = e.partial();
    }
  } else {
    m = min_expectation(x, budget, seed);
  }
  rep.min_value = m.value;
  rep.evaluations = m.evaluations;

  if (m.value < -tol) {
    rep.verdict = PositivityVerdict::NotPositive;
    rep.witness = std::make_pair(m.p, m.q);
    rep.note = norm_violation ? "operator norm exceeds 1; witness found" : "witness found";
  } else if (norm_violation) {
    rep.verdict = PositivityVerdict::NotPositive;
    rep.note = "operator norm exceeds 1";
  } else {
    rep.verdict = PositivityVerdict::NumericallyPositive;
    rep.note = "no violation found within budget";
  }
  return rep;
}

double kadison_schwarz_violation(const MapMatrix& x, const Hermitian3& a) {
  const Mat3c a2 = a.matrix() * a.matrix();
  const Mat3c sa = apply_map(x, a).matrix();
  const Mat3c sa2 = apply_map(x, Hermitian3::trusted(0.5 * (a2 + a2.adjoint()))).matrix();
  const Mat3c diff = sa2 - sa * sa;
  Eigen::SelfAdjointEigenSolver<Mat3c> eig(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

}  // namespace posmap
