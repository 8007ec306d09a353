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

#include "posmap/extremality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "posmap/catalog.hpp"

namespace posmap {

namespace {

using Angles = std::array<double, 4>;
using Row64 = Eigen::Matrix<double, 1, 64>;

double pair_distance(const ActivePair& a, const ActivePair& b) {
  return std::sqrt((a.m.bloch - b.m.bloch).squaredNorm() + (a.n.bloch - b.n.bloch).squaredNorm());
}

Row64 constraint_row(const Vec8& m, const Vec8& n) {
  const Mat8 outer = m * n.transpose();
  return Eigen::Map<const Row64>(outer.data());
}

Mat8 unvec(const Eigen::Matrix<double, 64, 1>& v) { return Eigen::Map<const Mat8>(v.data()); }

class DeflatedObjective {
 public:
  DeflatedObjective(const MapMatrix& x, const std::vector<ActivePair>& found, double radius)
      : x_(x), found_(found), radius_(radius), weight_(4.0) {}

  double operator()(const Angles& a) const {
    const Vec8 n = bloch_of_ket(ket_from_angles(a));
    double v = 1.0 / 3.0 + detail::min_eigenvalue_traceless(x_ * n);
    for (const auto& p : found_) {
      const double d = (n - p.n.bloch).norm();
      if (d < radius_) v += weight_ * (radius_ - d) * (radius_ - d);
    }
    return v;
  }

 private:
  const MapMatrix& x_;
  const std::vector<ActivePair>& found_;
  double radius_;
  double weight_;
};

struct Descent {
  Angles angles;
  long evaluations;
};

Descent descend(const DeflatedObjective& f, Angles a, long budget) {
  double value = f(a);
  long evals = 1;
  double step = 0.3;
  int halvings = 0;
  while (halvings < 30 && evals + 8 <= budget) {
    bool improved = false;
    for (int c = 0; c < 4; ++c) {
      for (double sign : {1.0, -1.0}) {
        Angles t = a;
        t[c] += sign * step;
        const double v = f(t);
        ++evals;
        if (v < value) {
          value = v;
          a = t;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      ++halvings;
    }
  }
  return {a, evals};
}

bool both_positive(const MapMatrix& x, const Mat8& d, double eps, const ExtremalitySettings& s,
                   std::vector<ActivePair>* witnesses) {
  for (double sign : {1.0, -1.0}) {
    const PositivityReport rep = is_positive(x + sign * eps * d, s.positivity_tol, s.positivity_budget,
                                             s.active.seed);
    if (!rep.positive()) {
      if (witnesses && rep.witness) {
        witnesses->push_back({rep.witness->first, rep.witness->second, rep.min_value});
      }
      return false;
    }
  }
  return true;
}

// Largest eps <= max_epsilon (bisection) with x +- eps d positive; 0 if none.
double line_search(const MapMatrix& x, const Mat8& d, const ExtremalitySettings& s,
                   std::vector<ActivePair>* witnesses) {
  if (both_positive(x, d, s.max_epsilon, s, witnesses)) return s.max_epsilon;
  double lo = 0.0;
  double hi = s.max_epsilon;
  for (int k = 0; k < s.bisection_steps; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (both_positive(x, d, mid, s, witnesses)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

ActiveSet active_pairs(const MapMatrix& x, const ActiveSettings& s) {
  ActiveSet set;
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> theta(0.0, 0.5 * std::numbers::pi);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
  const DeflatedObjective objective(x, set.pairs, s.deflation_radius);

  int misses = 0;
  while (set.evaluations < s.budget && misses < s.patience && set.pairs.size() < s.max_pairs) {
    const Angles start{theta(rng), theta(rng), phi(rng), phi(rng)};
    const long allowance = std::min<long>(4000, s.budget - set.evaluations);
    const Descent r = descend(objective, start, allowance);
    set.evaluations += r.evaluations;

    const PureState n = PureState::from_angles(r.angles);
    const Mat3c sq = Mat3c::Identity() / 3.0 + detail::traceless_from_bloch(x * n.bloch);
    Eigen::SelfAdjointEigenSolver<Mat3c> eig(sq);

    bool added = false;
    for (int k = 0; k < 2; ++k) {
      if (eig.eigenvalues()(k) > s.tol) break;
      ActivePair pair{PureState::from_ket(eig.eigenvectors().col(k)), n, 0.0};
      pair.value = pair_expectation(x, pair.m, pair.n);
      if (pair.value < -s.tol) {
        std::ostringstream msg;
        msg << "positivity violation: tr P S_x(Q) = " << pair.value;
        throw PositivityViolation(msg.str(), pair);
      }
      if (pair.value > s.tol) continue;
      const bool fresh = std::none_of(set.pairs.begin(), set.pairs.end(), [&](const ActivePair& p) {
        return pair_distance(p, pair) < s.deflation_radius;
      });
      if (fresh) {
        set.pairs.push_back(pair);
        added = true;
      }
    }
    misses = added ? 0 : misses + 1;
  }
  return set;
}

int active_rank(const ActiveSet& set, double threshold) {
  if (set.pairs.empty()) return 0;
  Eigen::MatrixXd a(set.pairs.size(), 64);
  for (std::size_t i = 0; i < set.pairs.size(); ++i)
    a.row(i) = constraint_row(set.pairs[i].m.bloch, set.pairs[i].n.bloch);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return static_cast<int>((svd.singularValues().array() > threshold).count());
}

const char* to_string(ExtremalityVerdict v) {
  switch (v) {
    case ExtremalityVerdict::CertifiedExtreme: return "CertifiedExtreme";
    case ExtremalityVerdict::NotExtreme: return "NotExtreme";
    case ExtremalityVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ExtremalityReport extreme_in_lambda(const MapMatrix& x, const ExtremalitySettings& s) {
  ExtremalityReport rep;
  rep.seed = s.active.seed;
  rep.budget = s.active.budget;

  auto try_direction = [&](Mat8 d, std::vector<ActivePair>* witnesses) {
    const double nd = d.norm();
    if (nd < 1e-6) return false;
    d /= nd;
    ++rep.directions_tried;
    const double eps = line_search(x, d, s, witnesses);
    if (eps >= s.min_epsilon) {
      rep.verdict = ExtremalityVerdict::NotExtreme;
      rep.direction = d;
      rep.epsilon = eps;
      return true;
    }
    return false;
  };

  const double norm = operator_norm(x);
  if (norm < 0.5 - 1e-12) {
    rep.note = "operator norm below 1/2: interior point";
    if (try_direction(Mat8::Identity(), nullptr)) return rep;
  }

  rep.active = active_pairs(x, s.active);
  rep.active_rank = active_rank(rep.active, s.rank_threshold);
  if (rep.active_rank == 64) {
    rep.verdict = ExtremalityVerdict::CertifiedExtreme;
    rep.note = "active constraints span all 64 directions";
    return rep;
  }

  // Segments towards known members of the set.
  const std::vector<Mat8> anchors = {Mat8::Identity(), Mat8::Zero(), transpose_matrix(),
                                     x.transpose(), x * x};
  for (const Mat8& a : anchors) {
    if (rep.directions_tried >= s.max_directions) break;
    if (try_direction(a - x, nullptr)) {
      rep.note = "segment towards a known member";
      return rep;
    }
  }

  // Null-space directions of the active constraints; every failed line
  // search contributes its witnesses as extra constraints.
  std::vector<Row64> rows;
  for (const auto& p : rep.active.pairs) rows.push_back(constraint_row(p.m.bloch, p.n.bloch));
  std::optional<Mat8> previous;
  while (rep.directions_tried < s.max_directions) {
    Eigen::MatrixXd a(std::max<std::size_t>(rows.size(), 1), 64);
    a.setZero();
    for (std::size_t i = 0; i < rows.size(); ++i) a.row(i) = rows[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > s.rank_threshold) ++rank;
    if (rank >= 64) break;
    const Eigen::MatrixXd null = svd.matrixV().rightCols(64 - rank);

    Mat8 d;
    if (previous) {
      const Eigen::Matrix<double, 64, 1> pv = Eigen::Map<const Eigen::Matrix<double, 64, 1>>(previous->data());
      const Eigen::Matrix<double, 64, 1> proj = null * (null.transpose() * pv);
      d = proj.norm() > 1e-6 ? unvec(proj) : unvec(null.col(0));
    } else {
      d = unvec(null.col(0));
    }

    std::vector<ActivePair> witnesses;
    if (try_direction(d, &witnesses)) {
      rep.note = "feasible direction in the null space of the active constraints";
      return rep;
    }
    if (witnesses.empty()) break;
    for (const auto& w : witnesses) rows.push_back(constraint_row(w.m.bloch, w.n.bloch));
    previous = d;
  }

  rep.verdict = ExtremalityVerdict::Inconclusive;
  rep.note = "active span deficient and no feasible direction found";
  return rep;
}

const char* to_string(CandidateTag t) {
  switch (t) {
    case CandidateTag::JordanIso: return "JordanIso";
    case CandidateTag::StronglyErgodicHalf: return "StronglyErgodicHalf";
    case CandidateTag::Q0P8Form: return "Q0P8Form";
    case CandidateTag::Other: return "Other";
  }
  return "?";
}

CandidateGroup classify_candidate(const MapMatrix& x, long budget, std::uint64_t seed) {
  CandidateGroup out;
  auto& ev = out.evidence;
  const IdempotentRecord e = idempotent_of(x);
  ev.norm = operator_norm(x);
  ev.e_class = e.canonical_class;
  const Mat8 xxt = x * x.transpose();
  ev.orthogonality_defect = (xxt - Mat8::Identity()).norm();
  ev.half_orthogonality_defect = (4.0 * xxt - Mat8::Identity()).norm();
  ev.ext0_excluded = !(e.canonical_class == CanonicalClass::p0 || e.canonical_class == CanonicalClass::p1 ||
                       e.canonical_class == CanonicalClass::one8);

  try {
    ev.q_index = q_index(decompose(x, e)).index;
  } catch (const Error& err) {
    ev.degraded = true;
    ev.note = err.what();
  }

  if (e.canonical_class == CanonicalClass::one8) {
    if (ev.orthogonality_defect <= 1e-8) {
      out.tag = CandidateTag::JordanIso;
    } else {
      ev.note = "e_x = 1_8 but x is not orthogonal";
    }
    return out;
  }

  if (e.canonical_class == CanonicalClass::p0 && std::abs(ev.norm - 0.5) <= 1e-8) {
    if (ev.half_orthogonality_defect <= 1e-8) {
      out.tag = CandidateTag::StronglyErgodicHalf;
    } else {
      ev.note = "norm 1/2 but 2x is not orthogonal: not extreme";
    }
    return out;
  }

  if (e.canonical_class == CanonicalClass::p0 || e.canonical_class == CanonicalClass::p1) {
    OrbitSettings os;
    os.budget = budget;
    os.seed = seed;
    try {
      const ReductionResult red = reduce_canonical(x, os);
      ev.reduction_residual = red.residual;
      ev.reduced_class = red.target_class;
      ev.reduced_y_norm = red.z_y_norm;
      if (red.target_class == CanonicalClass::p1 && red.residual < 1e-6) {
        const Mat8 p8 = canonical_projector(CanonicalClass::p1);
        const Mat8 y = red.z - p8;
        const double h_defect = (p8 * red.z * p8 - p8).norm();
        const double block = std::max((y * p8).norm(), (p8 * y).norm());
        if (h_defect <= 1e-8 && block <= 1e-8 && operator_norm(y) < 1.0 - 1e-8) {
          out.tag = CandidateTag::Q0P8Form;
          return out;
        }
        ev.note = "reduction to P8 did not give P8 + y with ||y|| < 1";
      }
    } catch (const Error& err) {
      ev.degraded = true;
      ev.note = err.what();
    }
  }
  return out;
}

}  // namespace posmap
