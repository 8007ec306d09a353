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

#include "posmap/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "posmap/catalog.hpp"
#include "posmap/parallel.hpp"

namespace posmap {

namespace {

using Mat8c = Eigen::Matrix<Complex, 8, 8>;

constexpr int kWitnessMaxPower = 4096;
constexpr double kWitnessTol = 1e-4;

// Swaps the adjacent diagonal entries k, k+1 of the upper triangular T,
// updating the unitary Q so that Q T Q* is unchanged.
void swap_adjacent(Mat8c& t, Mat8c& q, int k) {
  Eigen::Vector2cd v(t(k, k + 1), t(k + 1, k + 1) - t(k, k));
  const double nv = v.norm();
  if (nv == 0.0) return;
  v /= nv;
  Eigen::Matrix2cd g;
  g.col(0) = v;
  g(0, 1) = -std::conj(v(1));
  g(1, 1) = std::conj(v(0));
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  q.middleCols(k, 2) = q.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
}

double strict_upper_norm(const Eigen::MatrixXcd& m) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) s += std::norm(m(i, j));
  return std::sqrt(s);
}

double spectral_radius(const Mat8& m) {
  Eigen::EigenSolver<Mat8> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Nearest orthogonal projector to a symmetric matrix: eigenvalues >= 1/2 -> 1.
Mat8 clean_projector(const Mat8& sym, int* rank) {
  Eigen::SelfAdjointEigenSolver<Mat8> eig(sym);
  Mat8 p = Mat8::Zero();
  int r = 0;
  for (int k = 0; k < 8; ++k) {
    if (eig.eigenvalues()(k) >= 0.5) {
      p += eig.eigenvectors().col(k) * eig.eigenvectors().col(k).transpose();
      ++r;
    }
  }
  if (rank) *rank = r;
  return p;
}

}  // namespace

const char* to_string(CanonicalClass c) {
  switch (c) {
    case CanonicalClass::p0: return "p0";
    case CanonicalClass::p1: return "p1";
    case CanonicalClass::p2: return "p2";
    case CanonicalClass::p3: return "p3";
    case CanonicalClass::p4: return "p4";
    case CanonicalClass::p5: return "p5";
    case CanonicalClass::one8: return "one8";
  }
  return "?";
}

std::optional<CanonicalClass> class_from_string(std::string_view s) {
  for (auto c : {CanonicalClass::p0, CanonicalClass::p1, CanonicalClass::p2, CanonicalClass::p3,
                 CanonicalClass::p4, CanonicalClass::p5, CanonicalClass::one8})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

int class_rank(CanonicalClass c) {
  return c == CanonicalClass::one8 ? 8 : static_cast<int>(c);
}

CanonicalClass class_of_rank(int rank) {
  if (rank >= 0 && rank <= 5) return static_cast<CanonicalClass>(rank);
  if (rank == 8) return CanonicalClass::one8;
  std::ostringstream msg;
  msg << "no idempotent of rank " << rank << " exists in the positive set";
  throw InconsistentInputError(msg.str());
}

Mat8 canonical_projector(CanonicalClass c) {
  // 1-based basis indices of each diagonal projector.
  static const std::vector<std::vector<int>> support = {
      {}, {8}, {3, 8}, {1, 3, 8}, {1, 2, 3, 8}, {1, 3, 4, 6, 8}, {1, 2, 3, 4, 5, 6, 7, 8}};
  Mat8 p = Mat8::Zero();
  for (int i : support[static_cast<int>(c)]) p(i - 1, i - 1) = 1.0;
  return p;
}

IdempotentRecord idempotent_of(const MapMatrix& x, double tol) {
  Eigen::ComplexSchur<Mat8c> schur(x.cast<Complex>());
  Mat8c t = schur.matrixT();
  Mat8c q = schur.matrixU();

  for (int i = 0; i < 8; ++i) {
    if (std::abs(t(i, i)) > 1.0 + tol) {
      std::ostringstream msg;
      msg << "not a Λ-contraction: eigenvalue of modulus " << std::abs(t(i, i));
      throw NotInLambdaError(msg.str());
    }
  }

  int k = 0;
  for (int i = 0; i < 8; ++i) {
    if (std::abs(t(i, i)) >= 1.0 - tol) {
      for (int j = i - 1; j >= k; --j) swap_adjacent(t, q, j);
      ++k;
    }
  }

  Mat8c proj = Mat8c::Zero();
  if (k > 0) {
    const Eigen::MatrixXcd t11 = t.topLeftCorner(k, k);
    if (strict_upper_norm(t11) > 1e-6) {
      throw NotInLambdaError("not a Λ-contraction: peripheral spectrum has Jordan structure");
    }
    const int m = 8 - k;
    Eigen::MatrixXcd sylv = Eigen::MatrixXcd::Zero(k, m);
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXcd rhs = -t.block(0, k + j, k, 1);
      for (int l = 0; l < j; ++l) rhs += sylv.col(l) * t(k + l, k + j);
      Eigen::MatrixXcd lhs = t11;
      lhs.diagonal().array() -= t(k + j, k + j);
      sylv.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
    }
    Mat8c block = Mat8c::Zero();
    block.topLeftCorner(k, k).setIdentity();
    block.topRightCorner(k, m) = -sylv;
    proj = q * block * q.adjoint();
  }

  const Mat8 raw = proj.real();
  IdempotentRecord rec;
  rec.symmetrization_error = (raw - raw.transpose()).norm() + proj.imag().norm();
  const Mat8 sym = 0.5 * (raw + raw.transpose());
  if ((sym * sym - sym).norm() > 1e-8) {
    throw NotInLambdaError("not a Λ-contraction: peripheral projector is not orthogonal");
  }
  int rank = 0;
  const Mat8 e = clean_projector(sym, &rank);
  if (rank != k) throw NotInLambdaError("not a Λ-contraction: peripheral projector rank mismatch");
  if ((e * x - x * e).norm() > 1e-8) {
    throw NotInLambdaError("not a Λ-contraction: peripheral projector does not commute with x");
  }

  try {
    rec.canonical_class = class_of_rank(rank);
  } catch (const InconsistentInputError& err) {
    throw NotInLambdaError(err.what());
  }
  rec.e = e;
  rec.rank = rank;

  Mat8 power = x;
  rec.witness_distance = (power - e).norm();
  rec.witness_power = 1;
  for (int n = 1; n <= kWitnessMaxPower; ++n) {
    if (n > 1) power = power * x;
    const double d = (power - e).norm();
    if (d < rec.witness_distance) {
      rec.witness_distance = d;
      rec.witness_power = n;
    }
    if (d < kWitnessTol) break;
  }
  rec.witness_found = rec.witness_distance < kWitnessTol;
  return rec;
}

IdempotentRecord rank_class(const Mat8& e, double tol) {
  const double asym = (e - e.transpose()).norm();
  const double idem = (e * e - e).norm();
  if (asym > tol || idem > tol) {
    std::ostringstream msg;
    msg << "input is not a symmetric idempotent (||e - e^t|| = " << asym
        << ", ||e^2 - e|| = " << idem << ")";
    throw InputError(msg.str());
  }
  IdempotentRecord rec;
  rec.e = 0.5 * (e + e.transpose());
  Eigen::SelfAdjointEigenSolver<Mat8> eig(rec.e, Eigen::EigenvaluesOnly);
  rec.rank = static_cast<int>((eig.eigenvalues().array() >= 0.5).count());
  rec.canonical_class = class_of_rank(rec.rank);
  rec.symmetrization_error = asym;
  return rec;
}

Decomposition decompose(const MapMatrix& x, const IdempotentRecord& e, double tol) {
  const Mat8& p = e.e;
  const Mat8 perp = Mat8::Identity() - p;

  Decomposition d;
  d.e = e;
  d.cross_residual = std::max((p * x * perp).norm(), (perp * x * p).norm());
  if (d.cross_residual > tol) {
    std::ostringstream msg;
    msg << "x not consistent with e: cross blocks of size " << d.cross_residual;
    throw InconsistentInputError(msg.str());
  }
  d.h = p * x * p;
  d.y = x - d.h;
  d.group_residual = std::max((d.h.transpose() * d.h - p).norm(), (d.h * d.h.transpose() - p).norm());
  if (d.group_residual > 1e-8) {
    std::ostringstream msg;
    msg << "x not consistent with e: h^t h differs from e by " << d.group_residual;
    throw InconsistentInputError(msg.str());
  }
  d.y_norm = operator_norm(d.y);
  d.y_spectral_radius = spectral_radius(d.y);
  Mat8 yk = d.y;
  for (int i = 0; i < 6; ++i) yk = yk * yk;
  d.y_power64_norm = operator_norm(yk);
  return d;
}

QIndex q_index(const Decomposition& d, double tol) {
  Eigen::JacobiSVD<Mat8> svd(d.y);
  const auto& s = svd.singularValues();
  QIndex q;
  q.y_norm = s(0);
  if (s(0) > 1.0 + tol) {
    std::ostringstream msg;
    msg << "singular value " << s(0) << " of y exceeds 1: x is not in the positive set";
    throw NotInLambdaError(msg.str());
  }
  for (int k = 0; k < 8; ++k) {
    if (s(k) >= 1.0 - tol) {
      ++q.index;
      if (s(k) < 1.0 - 1e-10) q.boundary = true;
    }
  }
  const int r = d.e.rank;
  if (r == 5 || r == 8) {
    q.consistent = q.index == 0;
  } else {
    q.consistent = r + q.index <= 5;
  }
  return q;
}

QIndex q_index(const MapMatrix& x, double tol) {
  return q_index(decompose(x, idempotent_of(x)), tol);
}

Mat8 adjoint_rep(const Mat3c& u) {
  const double defect = (u.adjoint() * u - Mat3c::Identity()).norm();
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "adjoint_rep: matrix is not unitary (||U*U - 1|| = " << defect << ")";
    throw InputError(msg.str());
  }
  const auto& lam = gellmann_basis();
  Mat8 g;
  for (int j = 1; j <= 8; ++j) {
    const Mat3c m = u * lam[j] * u.adjoint();
    for (int i = 1; i <= 8; ++i) g(i - 1, j - 1) = (lam[i] * m).trace().real();
  }
  return g;
}

Mat3c su3_exp(const Vec8& theta) {
  const auto& lam = gellmann_basis();
  Mat3c h = Mat3c::Zero();
  for (int k = 1; k <= 8; ++k) h += theta(k - 1) * lam[k];
  Eigen::SelfAdjointEigenSolver<Mat3c> eig(h);
  Eigen::Vector3cd phases;
  for (int i = 0; i < 3; ++i) phases(i) = std::polar(1.0, eig.eigenvalues()(i));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

const std::array<Mat8, 8>& adjoint_generators() {
  static const std::array<Mat8, 8> gens = [] {
    const auto& lam = gellmann_basis();
    const Complex im(0.0, 1.0);
    std::array<Mat8, 8> a;
    for (int k = 1; k <= 8; ++k) {
      for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j) {
          const Mat3c comm = lam[k] * lam[j] - lam[j] * lam[k];
          a[k - 1](i - 1, j - 1) = (im * (lam[i] * comm).trace()).real();
        }
    }
    return a;
  }();
  return gens;
}

namespace {

struct OrbitProblem {
  const Mat8& target;
  const Mat8& canonical;

  Mat8 image(const Mat8& g) const { return g * canonical * g.transpose(); }
  double residual(const Mat3c& u) const { return (image(adjoint_rep(u)) - target).norm(); }
};

OrbitFit local_orbit_search(const OrbitProblem& prob, const Mat3c& start, long budget) {
  OrbitFit fit;
  fit.u = start;
  fit.residual = prob.residual(start);
  fit.evaluations = 1;

  // Coordinate descent in the chart theta -> exp(i theta.lambda) U.
  double step = 0.5;
  int halvings = 0;
  const long cd_budget = budget / 2;
  while (halvings < 16 && fit.residual > 1e-3 && fit.evaluations + 16 <= cd_budget) {
    bool improved = false;
    for (int k = 0; k < 8; ++k) {
      for (double sign : {1.0, -1.0}) {
        Vec8 theta = Vec8::Zero();
        theta(k) = sign * step;
        const Mat3c u = su3_exp(theta) * fit.u;
        const double r = prob.residual(u);
        ++fit.evaluations;
        if (r < fit.residual) {
          fit.u = u;
          fit.residual = r;
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

  // Levenberg-Marquardt polish with the exact tangent map [A_k, E].
  const auto& gens = adjoint_generators();
  double mu = 1e-3;
  while (fit.residual > 1e-14 && mu < 1e10 && fit.evaluations + 9 <= budget) {
    const Mat8 g = adjoint_rep(fit.u);
    const Mat8 e = prob.image(g);
    const Mat8 diff = e - prob.target;
    Eigen::Matrix<double, 64, 1> r = Eigen::Map<const Eigen::Matrix<double, 64, 1>>(diff.data());
    Eigen::Matrix<double, 64, 8> jac;
    for (int k = 0; k < 8; ++k) {
      const Mat8 col = gens[k] * e - e * gens[k];
      jac.col(k) = Eigen::Map<const Eigen::Matrix<double, 64, 1>>(col.data());
    }
    fit.evaluations += 8;
    const Eigen::Matrix<double, 8, 8> jtj = jac.transpose() * jac;
    const Vec8 jtr = jac.transpose() * r;
    bool accepted = false;
    while (!accepted && mu < 1e10 && fit.evaluations + 1 <= budget) {
      Eigen::Matrix<double, 8, 8> lhs = jtj;
      lhs.diagonal().array() += mu;
      const Vec8 delta = -lhs.ldlt().solve(jtr);
      const Mat3c u = su3_exp(delta) * fit.u;
      const double res = prob.residual(u);
      ++fit.evaluations;
      if (res < fit.residual) {
        fit.u = u;
        fit.residual = res;
        mu = std::max(mu * 0.3, 1e-12);
        accepted = true;
      } else {
        mu *= 4.0;
      }
    }
  }
  fit.g = adjoint_rep(fit.u);
  return fit;
}

}  // namespace

OrbitFit conjugate_to_canonical(const IdempotentRecord& e, const OrbitSettings& s) {
  if (s.starts < 1 || s.budget < s.starts) throw InputError("conjugate_to_canonical: bad search settings");
  const Mat8 canonical = canonical_projector(e.canonical_class);
  const OrbitProblem prob{e.e, canonical};

  std::vector<Mat3c> starts;
  starts.reserve(s.starts);
  starts.push_back(Mat3c::Identity());
  std::mt19937_64 rng(s.seed);
  while (static_cast<int>(starts.size()) < s.starts) starts.push_back(random_su3(rng()));

  const long per_start = s.budget / s.starts;
  std::vector<OrbitFit> fits(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { fits[i] = local_orbit_search(prob, starts[i], per_start); });

  std::size_t best = 0;
  long evaluations = 0;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    evaluations += fits[i].evaluations;
    if (fits[i].residual < fits[best].residual) best = i;
  }
  OrbitFit out = fits[best];
  out.evaluations = evaluations;
  if (!(out.residual < s.success_residual)) {
    std::ostringstream msg;
    msg << "orbit search failed: best residual " << out.residual << " for class "
        << to_string(e.canonical_class);
    throw OrbitSearchFailed(msg.str(), out);
  }
  return out;
}

ReductionResult reduce_canonical(const MapMatrix& x, const OrbitSettings& s) {
  const IdempotentRecord ex = idempotent_of(x);
  const Mat8 pj = canonical_projector(ex.canonical_class);

  // Move e_x onto its canonical representative first.
  Mat8 g0 = Mat8::Identity();
  double orbit_residual = 0.0;
  if ((ex.e - pj).norm() > 1e-10) {
    const OrbitFit fit = conjugate_to_canonical(ex, s);
    g0 = fit.g;
    orbit_residual = fit.residual;
  }
  const Mat8 xc = g0.transpose() * x * g0;

  IdempotentRecord canon;
  canon.e = pj;
  canon.rank = ex.rank;
  canon.canonical_class = ex.canonical_class;
  const Decomposition dec = decompose(xc, canon);
  const QIndex qi = q_index(dec);

  ReductionResult res;
  res.source_class = ex.canonical_class;
  res.i = qi.index;
  const int j = ex.rank;

  Mat8 g1 = Mat8::Identity();
  Mat8 g2 = Mat8::Identity();
  Mat8 z = xc;
  double commute_tol = 1e-8;

  if (qi.index == 0) {
    res.target_class = ex.canonical_class;
  } else {
    if (j > 4 || qi.index + j > 5) {
      std::ostringstream msg;
      msg << "Q_" << qi.index << "(" << to_string(ex.canonical_class)
          << ") admits no reduction to a canonical class";
      throw InconsistentInputError(msg.str());
    }
    const int i = qi.index;
    res.target_class = class_of_rank(i + j);
    const Mat8 target = canonical_projector(res.target_class);

    Eigen::JacobiSVD<Mat8> svd(dec.y, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto left = svd.matrixU().leftCols(i);
    const auto right = svd.matrixV().leftCols(i);
    const Mat8 e1 = pj + left * left.transpose();
    const Mat8 e2 = pj + right * right.transpose();
    commute_tol = std::max(commute_tol, 4.0 * (1.0 - svd.singularValues()(i - 1)));

    const IdempotentRecord r1 = rank_class(e1, 1e-8);
    const IdempotentRecord r2 = rank_class(e2, 1e-8);
    if (r1.canonical_class != res.target_class || r2.canonical_class != res.target_class)
      throw InconsistentInputError("reduction idempotents have unexpected rank");

    const OrbitFit f1 = conjugate_to_canonical(r1, s);
    OrbitSettings s2 = s;
    s2.seed = s.seed + 1;
    const OrbitFit f2 = conjugate_to_canonical(r2, s2);
    g1 = f1.g;
    g2 = f2.g.transpose();
    orbit_residual = std::max({orbit_residual, f1.residual, f2.residual});
    z = g1.transpose() * xc * g2.transpose();

    const double comm = (target * z - z * target).norm();
    if (comm > commute_tol) {
      std::ostringstream msg;
      msg << "reduction verification failed: z does not commute with "
          << to_string(res.target_class) << " (" << comm << ")";
      throw InconsistentInputError(msg.str());
    }
  }

  IdempotentRecord target_rec;
  target_rec.e = canonical_projector(res.target_class);
  target_rec.rank = class_rank(res.target_class);
  target_rec.canonical_class = res.target_class;
  const Mat8 target_perp = Mat8::Identity() - target_rec.e;
  const Mat8 yz = target_perp * z * target_perp;
  res.z_y_norm = operator_norm(yz);
  if (res.i > 0 && !(res.z_y_norm < 1.0 - 1e-6)) {
    throw InconsistentInputError("reduction verification failed: z is not in Q_0 of the target class");
  }

  res.g1 = g0 * g1;
  res.g2 = g2 * g0.transpose();
  res.z = z;
  res.orbit_residual = orbit_residual;
  res.residual = std::max((res.g1 * res.z * res.g2 - x).norm(), orbit_residual);
  return res;
}

}  // namespace posmap
