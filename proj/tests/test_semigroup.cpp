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
#include "posmap/semigroup.hpp"
#include "support.hpp"

using namespace posmap;
using Catch::Matchers::WithinAbs;

namespace {

void check_projection(const Mat8& e) {
  CHECK((e * e - e).norm() < 1e-10);
  CHECK((e - e.transpose()).norm() < 1e-10);
}

}  // namespace

TEST_CASE("canonical classes") {
  const int ranks[] = {0, 1, 2, 3, 4, 5, 8};
  for (int k = 0; k < 7; ++k) {
    const auto c = static_cast<CanonicalClass>(k);
    CHECK(class_rank(c) == ranks[k]);
    CHECK(class_of_rank(ranks[k]) == c);
    CHECK(class_from_string(to_string(c)) == c);
    const Mat8 p = canonical_projector(c);
    check_projection(p);
    CHECK(std::lround(p.trace()) == ranks[k]);
  }
  CHECK_THROWS_AS(class_of_rank(6), InconsistentInputError);
  CHECK_THROWS_AS(class_of_rank(7), InconsistentInputError);
  CHECK_THROWS_AS(class_of_rank(9), InconsistentInputError);
  CHECK_FALSE(class_from_string("p6").has_value());
  SECTION("diagonal supports") {
    CHECK(canonical_projector(CanonicalClass::p1)(7, 7) == 1.0);
    CHECK(canonical_projector(CanonicalClass::p5).diagonal() ==
          (Vec8() << 1, 0, 1, 1, 0, 1, 0, 1).finished());
  }
  SECTION("canonical projectors are limits of positive maps") {
    // p5 is the average of the identity and the transpose.
    CHECK((canonical_projector(CanonicalClass::p5) - 0.5 * (Mat8::Identity() + transpose_matrix())).norm() < 1e-15);
  }
}

TEST_CASE("idempotent_of on catalog members") {
  SECTION("Choi family is nilpotent in the limit") {
    for (double t : {0.0, 0.25, 0.5, 0.75}) {
      const IdempotentRecord r = idempotent_of(choi_matrix(t));
      CHECK(r.rank == 0);
      CHECK(r.canonical_class == CanonicalClass::p0);
      CHECK(r.witness_found);
    }
  }
  SECTION("s0 gives P8") {
    const IdempotentRecord r = idempotent_of(s0_matrix());
    CHECK(r.canonical_class == CanonicalClass::p1);
    CHECK((r.e - canonical_projector(CanonicalClass::p1)).norm() < 1e-10);
    check_projection(r.e);
  }
  SECTION("orthogonal members give the identity") {
    testing::Rng rng(20);
    for (int k = 0; k < 10; ++k) {
      const IdempotentRecord r = idempotent_of(adjoint_rep(testing::haar_unitary(rng)));
      CHECK(r.canonical_class == CanonicalClass::one8);
      CHECK((r.e - Mat8::Identity()).norm() < 1e-10);
    }
    const IdempotentRecord t = idempotent_of(transpose_matrix());
    CHECK(t.canonical_class == CanonicalClass::one8);
    CHECK(t.witness_found);
    CHECK(t.witness_power == 2);
  }
  SECTION("interior points give zero") {
    testing::Rng rng(21);
    const IdempotentRecord r = idempotent_of(testing::random_with_norm(rng, 0.4));
    CHECK(r.rank == 0);
    CHECK(r.witness_found);
  }
}

TEST_CASE("idempotent_of rejects non-contractions") {
  Mat8 x = Mat8::Identity();
  x(0, 0) = 1.5;
  CHECK_THROWS_AS(idempotent_of(x), NotInLambdaError);
  Mat8 jordan = Mat8::Zero();
  jordan(0, 0) = jordan(1, 1) = 1.0;
  jordan(0, 1) = 1.0;
  CHECK_THROWS_AS(idempotent_of(jordan), NotInLambdaError);
  Mat8 oblique = Mat8::Zero();
  oblique(0, 0) = 1.0;
  oblique(0, 1) = 0.5;
  CHECK_THROWS_AS(idempotent_of(oblique), NotInLambdaError);
}

TEST_CASE("rank_class on planted idempotents") {
  testing::Rng rng(22);
  for (int k = 0; k < 200; ++k) {
    const Mat8 e = testing::random_planted_idempotent(rng);
    const IdempotentRecord r = rank_class(e);
    CHECK(r.rank != 6);
    CHECK(r.rank != 7);
    CHECK(std::lround(e.trace()) == r.rank);
    CHECK(class_rank(r.canonical_class) == r.rank);
  }
  CHECK_THROWS_AS(rank_class(0.5 * Mat8::Identity()), InputError);
}

TEST_CASE("decomposition of s0") {
  const Mat8 x = s0_matrix();
  const Decomposition d = decompose(x, idempotent_of(x));
  CHECK((d.h - canonical_projector(CanonicalClass::p1)).norm() < 1e-10);
  CHECK_THAT(d.y_norm, WithinAbs(1.0 / std::sqrt(2.0), 1e-10));
  CHECK(d.cross_residual < 1e-10);
  CHECK(d.group_residual < 1e-8);
  CHECK((d.h + d.y - x).norm() == 0.0);
  CHECK((d.h * d.y).norm() < 1e-10);
  CHECK((d.y * d.h).norm() < 1e-10);
  CHECK(d.y_power64_norm < 1e-6);
  const QIndex q = q_index(d);
  CHECK(q.index == 0);
  CHECK(q.consistent);
  SECTION("repeat decomposition is identical") {
    const Decomposition d2 = decompose(x + Mat8::Zero(), idempotent_of(x));
    CHECK((d2.h - d.h).norm() < 1e-10);
    CHECK((d2.y - d.y).norm() < 1e-10);
  }
}

TEST_CASE("decompose rejects a mismatched idempotent") {
  CHECK_THROWS_AS(decompose(choi_matrix(0.0), idempotent_of(s0_matrix())), InconsistentInputError);
}

TEST_CASE("planted members of Q(e)") {
  testing::Rng rng(23);
  const auto pairs = testing::planted_pairs();
  for (int k = 0; k < 40; ++k) {
    const auto [i, j] = pairs[rng() % pairs.size()];
    const testing::Planted p = testing::planted_instance(i, j, rng);
    const Mat8 g = adjoint_rep(testing::haar_unitary(rng));
    const Mat8 x = g * p.x * g.transpose();
    const IdempotentRecord e = idempotent_of(x);
    INFO("i = " << i << ", j = " << j);
    CHECK(e.rank == class_rank(static_cast<CanonicalClass>(j)));
    check_projection(e.e);
    const Decomposition d = decompose(x, e);
    CHECK((d.h.transpose() * d.h - e.e).norm() < 1e-8);
    CHECK((d.h * d.h.transpose() - e.e).norm() < 1e-8);
    const QIndex q = q_index(d);
    CHECK(q.index == i);
    CHECK(q.consistent);
    if (j == 1) CHECK((d.h - e.e).norm() < 1e-8);
  }
}

TEST_CASE("nilpotent class decays") {
  testing::Rng rng(24);
  for (int k = 0; k < 10; ++k) {
    const Mat8 x = testing::random_with_norm(rng, 0.9);
    const IdempotentRecord e = idempotent_of(x);
    REQUIRE(e.rank == 0);
    Mat8 p = Mat8::Identity();
    for (int n = 0; n < 64; ++n) p = p * x;
    CHECK(p.norm() < 1e-2);
  }
}

TEST_CASE("adjoint representation") {
  testing::Rng rng(25);
  for (int k = 0; k < 30; ++k) {
    const Mat3c u = testing::haar_unitary(rng);
    const Mat3c v = testing::haar_unitary(rng);
    const Mat8 gu = adjoint_rep(u);
    CHECK((gu * gu.transpose() - Mat8::Identity()).norm() < 1e-10);
    CHECK_THAT(gu.determinant(), WithinAbs(1.0, 1e-10));
    CHECK((adjoint_rep(u * v) - gu * adjoint_rep(v)).norm() < 1e-10);
    CHECK((adjoint_rep(std::polar(1.0, 0.3) * u) - gu).norm() < 1e-12);
    const Hermitian3 a(testing::random_hermitian(rng));
    CHECK((apply_map(gu, a).matrix() - u * a.matrix() * u.adjoint()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(adjoint_rep(2.0 * Mat3c::Identity()), InputError);
}

TEST_CASE("su3 exponential and generators") {
  testing::Rng rng(26);
  Vec8 th;
  for (int i = 0; i < 8; ++i) th(i) = testing::uniform(rng, -1.0, 1.0);
  const Mat3c u = su3_exp(th);
  CHECK((u * u.adjoint() - Mat3c::Identity()).norm() < 1e-13);
  CHECK(std::abs(u.determinant() - 1.0) < 1e-12);
  const auto& gens = adjoint_generators();
  for (int k = 0; k < 8; ++k) {
    CHECK((gens[k] + gens[k].transpose()).norm() < 1e-14);
    Vec8 e = Vec8::Zero();
    e(k) = 0.37;
    const Mat8 exact = adjoint_rep(su3_exp(e));
    Mat8 series = Mat8::Identity();
    Mat8 term = Mat8::Identity();
    for (int n = 1; n < 30; ++n) {
      term = term * (0.37 * gens[k]) / n;
      series += term;
    }
    CHECK((exact - series).norm() < 1e-12);
  }
}

TEST_CASE("conjugate_to_canonical") {
  testing::Rng rng(27);
  for (int c = 1; c < 6; ++c) {
    const auto cls = static_cast<CanonicalClass>(c);
    const Mat8 g = adjoint_rep(testing::haar_unitary(rng));
    const IdempotentRecord e = rank_class(g * canonical_projector(cls) * g.transpose());
    OrbitSettings s;
    s.seed = 5;
    const OrbitFit fit = conjugate_to_canonical(e, s);
    CHECK(fit.residual < 1e-6);
    CHECK((fit.g * canonical_projector(cls) * fit.g.transpose() - e.e).norm() < 1e-6);
    CHECK((fit.g - adjoint_rep(fit.u)).norm() < 1e-10);
  }
}

TEST_CASE("reduce_canonical on planted instances") {
  testing::Rng rng(28);
  for (const auto& [i, j] : testing::planted_pairs()) {
    const testing::Planted p = testing::planted_instance(i, j, rng);
    INFO("i = " << i << ", j = " << j);
    const ReductionResult r = reduce_canonical(p.x);
    CHECK(r.i == i);
    CHECK(r.target_class == static_cast<CanonicalClass>(i + j));
    CHECK(r.residual < 1e-6);
    CHECK((r.g1 * r.z * r.g2 - p.x).norm() < 1e-6);
    for (const Mat8* g : {&r.g1, &r.g2}) CHECK((*g * g->transpose() - Mat8::Identity()).norm() < 1e-8);
    const Mat8 pt = canonical_projector(r.target_class);
    CHECK((r.z * pt - pt * r.z).norm() < 1e-6);
    CHECK(r.z_y_norm < 1.0);
    CHECK(q_index(r.z).index == 0);
  }
}

TEST_CASE("idempotent_of is equivariant under conjugation") {
  testing::Rng rng(29);
  for (const auto& name : {"choi:t=0.5", "s0", "transpose", "identity"}) {
    const Mat8 x = *resolve_generator(name);
    const Mat8 ex = idempotent_of(x).e;
    for (int k = 0; k < 5; ++k) {
      const Mat8 g = adjoint_rep(testing::haar_unitary(rng));
      const Mat8 eg = idempotent_of(g * x * g.transpose()).e;
      INFO(name);
      CHECK((eg - g * ex * g.transpose()).norm() < 1e-8);
    }
  }
}
