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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "posmap/catalog.hpp"
#include "posmap/extremality.hpp"
#include "support.hpp"

using namespace posmap;
using Catch::Matchers::WithinAbs;

namespace {

void check_not_extreme_certificate(const MapMatrix& x, const ExtremalityReport& r) {
  REQUIRE(r.verdict == ExtremalityVerdict::NotExtreme);
  REQUIRE(r.direction.has_value());
  CHECK(r.direction->norm() >= 1e-6);
  CHECK(r.epsilon > 0.0);
  CHECK(is_positive(x + r.epsilon * *r.direction, 1e-8, 200000, 99).positive());
  CHECK(is_positive(x - r.epsilon * *r.direction, 1e-8, 200000, 99).positive());
}

}  // namespace

TEST_CASE("active pairs") {
  SECTION("zero map has none") {
    const ActiveSet s = active_pairs(Mat8::Zero());
    CHECK(s.pairs.empty());
    CHECK(active_rank(s) == 0);
  }
  SECTION("identity map: active pairs are orthogonal states") {
    const ActiveSet s = active_pairs(Mat8::Identity());
    REQUIRE_FALSE(s.pairs.empty());
    for (const auto& p : s.pairs) CHECK(std::abs(p.m.ket.dot(p.n.ket)) < 1e-3);
  }
  SECTION("Choi map has zeros and stored values are exact") {
    const Mat8 x = choi_matrix(0.0);
    const ActiveSet s = active_pairs(x);
    REQUIRE_FALSE(s.pairs.empty());
    for (const auto& p : s.pairs) {
      CHECK_THAT(p.m.bloch.norm(), WithinAbs(std::sqrt(2.0 / 3.0), 1e-12));
      CHECK_THAT(p.n.bloch.norm(), WithinAbs(std::sqrt(2.0 / 3.0), 1e-12));
      CHECK_THAT(pair_expectation(x, p.m, p.n), WithinAbs(p.value, 1e-10));
      CHECK(std::abs(p.value) <= 1e-6);
    }
    CHECK(active_rank(s) <= 64);
  }
  SECTION("violations abort with a witness") {
    const Mat8 x = -0.9 * Mat8::Identity();
    try {
      active_pairs(x);
      FAIL("expected PositivityViolation");
    } catch (const PositivityViolation& v) {
      CHECK(v.witness().value < -1e-6);
      CHECK_THAT(pair_expectation(x, v.witness().m, v.witness().n), WithinAbs(v.witness().value, 1e-12));
    }
  }
}

TEST_CASE("active_rank counts independent constraints") {
  ActiveSet s;
  const PureState a = PureState::from_ket(Vec3c::UnitX());
  const PureState b = PureState::from_ket(Vec3c::UnitY());
  s.pairs = {{a, b, 0.0}, {a, b, 0.0}, {b, a, 0.0}};
  CHECK(active_rank(s) == 2);
}

TEST_CASE("NotExtreme verdicts carry verified segments") {
  SECTION("midpoint of the Choi map and the identity") {
    const Mat8 x = 0.5 * (choi_matrix(0.0) + Mat8::Identity());
    check_not_extreme_certificate(x, extreme_in_lambda(x));
  }
  SECTION("zero map") {
    const ExtremalityReport r = extreme_in_lambda(Mat8::Zero());
    check_not_extreme_certificate(Mat8::Zero(), r);
  }
  SECTION("interior points") {
    testing::Rng rng(30);
    for (int k = 0; k < 5; ++k) {
      const Mat8 x = testing::random_with_norm(rng, testing::uniform(rng, 0.05, 0.45));
      check_not_extreme_certificate(x, extreme_in_lambda(x));
    }
  }
}

TEST_CASE("Choi map is never reported NotExtreme") {
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    ExtremalitySettings s;
    s.active.seed = seed;
    const ExtremalityReport r = extreme_in_lambda(choi_matrix(0.0), s);
    CHECK(r.verdict != ExtremalityVerdict::NotExtreme);
    if (r.verdict == ExtremalityVerdict::CertifiedExtreme) CHECK(r.active_rank == 64);
  }
}

TEST_CASE("orthogonal members are certified extreme") {
  testing::Rng rng(31);
  const Mat8 g = adjoint_rep(testing::haar_unitary(rng));
  const ExtremalityReport r = extreme_in_lambda(g);
  CHECK(r.verdict != ExtremalityVerdict::NotExtreme);
  if (r.verdict == ExtremalityVerdict::CertifiedExtreme) {
    CHECK(r.active_rank == 64);
    // Spot-check the certificate: directions that move an active constraint
    // leave the set on one side.
    int broken = 0;
    for (int k = 0; k < 10; ++k) {
      const Mat8 d = testing::random_gaussian8(rng).normalized();
      const bool plus = is_positive(g + 1e-3 * d, 1e-8, 200000, 7).positive();
      const bool minus = is_positive(g - 1e-3 * d, 1e-8, 200000, 7).positive();
      broken += !(plus && minus);
    }
    CHECK(broken == 10);
  }
}

TEST_CASE("classify_candidate") {
  SECTION("Choi family") {
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const CandidateGroup g = classify_candidate(choi_matrix(t));
      INFO("t = " << t);
      CHECK(g.tag == CandidateTag::StronglyErgodicHalf);
      CHECK_THAT(g.evidence.norm, WithinAbs(0.5, 1e-8));
      CHECK(g.evidence.e_class == CanonicalClass::p0);
      CHECK(g.evidence.half_orthogonality_defect < 1e-8);
      CHECK_FALSE(g.evidence.ext0_excluded);
    }
  }
  SECTION("s0") {
    const CandidateGroup g = classify_candidate(s0_matrix());
    CHECK(g.tag == CandidateTag::Q0P8Form);
    CHECK(g.evidence.e_class == CanonicalClass::p1);
    REQUIRE(g.evidence.reduced_y_norm.has_value());
    CHECK_THAT(*g.evidence.reduced_y_norm, WithinAbs(1.0 / std::sqrt(2.0), 1e-10));
  }
  SECTION("orthogonal members") {
    testing::Rng rng(32);
    for (int k = 0; k < 5; ++k)
      CHECK(classify_candidate(adjoint_rep(testing::haar_unitary(rng))).tag == CandidateTag::JordanIso);
    CHECK(classify_candidate(transpose_matrix()).tag == CandidateTag::JordanIso);
  }
  SECTION("conjugated s0 reduces to P8") {
    testing::Rng rng(33);
    const Mat8 g = adjoint_rep(testing::haar_unitary(rng));
    const CandidateGroup c = classify_candidate(g * s0_matrix() * g.transpose());
    CHECK(c.tag == CandidateTag::Q0P8Form);
  }
  SECTION("a norm-1/2 map that is not half-orthogonal is Other") {
    Mat8 x = Mat8::Zero();
    x(0, 0) = 0.5;
    const CandidateGroup c = classify_candidate(x);
    CHECK(c.tag == CandidateTag::Other);
  }
  SECTION("classes outside 0, P8, 1 are excluded from Ext0") {
    testing::Rng rng(34);
    const testing::Planted p = testing::planted_instance(0, 2, rng);
    const CandidateGroup c = classify_candidate(p.x);
    CHECK(c.tag == CandidateTag::Other);
    CHECK(c.evidence.ext0_excluded);
  }
}
