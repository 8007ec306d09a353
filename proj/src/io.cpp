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

#include "posmap/io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace posmap {

namespace {

double real_from(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + ": non-finite value");
  return v;
}

bool is_array_of(const Json& j, std::size_t n) { return j.is_array() && j.size() == n; }

Json vec_json(const Vec8& v) {
  Json out = Json::array();
  for (int i = 0; i < 8; ++i) out.push_back(v(i));
  return out;
}

Json pure_json(const PureState& s) { return {{"ket", to_json(s.ket)}, {"bloch", vec_json(s.bloch)}}; }

}  // namespace

Json to_json(const Mat8& m) {
  Json rows = Json::array();
  for (int i = 0; i < 8; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 8; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Hermitian3& a) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back({a.matrix()(i, j).real(), a.matrix()(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const CoherenceVector& v) { return {{"a0", v.a0}, {"avec", vec_json(v.avec)}}; }

Json to_json(const Vec3c& ket) {
  Json out = Json::array();
  for (int i = 0; i < 3; ++i) out.push_back({ket(i).real(), ket(i).imag()});
  return out;
}

Json to_json(const PositivityReport& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"min_value", r.min_value},
         {"evaluations", r.evaluations},
         {"seed", r.seed},
         {"norm", r.norm},
         {"note", r.note}};
  if (r.witness) {
    j["witness"] = {{"p", pure_json(r.witness->first)}, {"q", pure_json(r.witness->second)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const IdempotentRecord& r) {
  return {{"e", to_json(r.e)},
          {"rank", r.rank},
          {"class", to_string(r.canonical_class)},
          {"symmetrization_error", r.symmetrization_error},
          {"witness_found", r.witness_found},
          {"witness_power", r.witness_power},
          {"witness_distance", r.witness_distance},
          {"membership_verified", r.membership_verified}};
}

Json to_json(const Decomposition& d) {
  return {{"h", to_json(d.h)},
          {"y", to_json(d.y)},
          {"e", to_json(d.e)},
          {"cross_residual", d.cross_residual},
          {"group_residual", d.group_residual},
          {"y_norm", d.y_norm},
          {"y_spectral_radius", d.y_spectral_radius},
          {"y_power64_norm", d.y_power64_norm}};
}

Json to_json(const QIndex& q) {
  return {{"index", q.index}, {"y_norm", q.y_norm}, {"boundary", q.boundary}, {"consistent", q.consistent}};
}

Json to_json(const ReductionResult& r) {
  return {{"g1", to_json(r.g1)},
          {"z", to_json(r.z)},
          {"g2", to_json(r.g2)},
          {"source_class", to_string(r.source_class)},
          {"target_class", to_string(r.target_class)},
          {"i", r.i},
          {"residual", r.residual},
          {"orbit_residual", r.orbit_residual},
          {"z_y_norm", r.z_y_norm}};
}

Json to_json(const ExtremalityReport& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"active_rank", r.active_rank},
         {"epsilon", r.epsilon},
         {"active_pairs", r.active.pairs.size()},
         {"active_evaluations", r.active.evaluations},
         {"directions_tried", r.directions_tried},
         {"seed", r.seed},
         {"budget", r.budget},
         {"note", r.note}};
  j["direction"] = r.direction ? to_json(*r.direction) : Json(nullptr);
  return j;
}

Json to_json(const CandidateGroup& g) {
  const auto& ev = g.evidence;
  Json e{{"norm", ev.norm},
         {"e_class", to_string(ev.e_class)},
         {"q_index", ev.q_index},
         {"orthogonality_defect", ev.orthogonality_defect},
         {"half_orthogonality_defect", ev.half_orthogonality_defect},
         {"degraded", ev.degraded},
         {"ext0_excluded", ev.ext0_excluded},
         {"note", ev.note}};
  e["reduction_residual"] = ev.reduction_residual ? Json(*ev.reduction_residual) : Json(nullptr);
  e["reduced_y_norm"] = ev.reduced_y_norm ? Json(*ev.reduced_y_norm) : Json(nullptr);
  e["reduced_class"] = ev.reduced_class ? Json(to_string(*ev.reduced_class)) : Json(nullptr);
  return {{"tag", to_string(g.tag)}, {"evidence", e}};
}

Mat8 map_from_json(const Json& j) {
  if (!is_array_of(j, 8)) throw InputError("map matrix: expected 8 rows");
  Mat8 m;
  for (int i = 0; i < 8; ++i) {
    if (!is_array_of(j[i], 8)) throw InputError("map matrix: expected 8 columns in every row");
    for (int k = 0; k < 8; ++k) m(i, k) = real_from(j[i][k], "map matrix");
  }
  return m;
}

Hermitian3 hermitian_from_json(const Json& j) {
  if (!is_array_of(j, 3)) throw InputError("hermitian matrix: expected 3 rows");
  Mat3c a;
  for (int i = 0; i < 3; ++i) {
    if (!is_array_of(j[i], 3)) throw InputError("hermitian matrix: expected 3 columns in every row");
    for (int k = 0; k < 3; ++k) {
      const Json& z = j[i][k];
      if (!is_array_of(z, 2)) throw InputError("hermitian matrix: entries are [re, im] pairs");
      a(i, k) = Complex(real_from(z[0], "hermitian matrix"), real_from(z[1], "hermitian matrix"));
    }
  }
  return Hermitian3(a);
}

CoherenceVector coherence_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a0") || !j.contains("avec"))
    throw InputError("coherence vector: expected {\"a0\", \"avec\"}");
  const Json& v = j.at("avec");
  if (!is_array_of(v, 8)) throw InputError("coherence vector: avec must have 8 entries");
  CoherenceVector c;
  c.a0 = real_from(j.at("a0"), "coherence vector");
  for (int i = 0; i < 8; ++i) c.avec(i) = real_from(v[i], "coherence vector");
  return c;
}

ParsedInput parse_input(const Json& j) {
  if (j.is_object()) {
    if (j.contains("matrix")) return parse_input(j.at("matrix"));
    return coherence_from_json(j);
  }
  if (is_array_of(j, 8)) return map_from_json(j);
  if (is_array_of(j, 3)) return hermitian_from_json(j);
  throw InputError("unrecognized input: expected an 8x8 map matrix, a 3x3 hermitian matrix or a coherence vector");
}

ParsedInput parse_input_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_input(j);
}

std::string active_pairs_csv(const ActiveSet& set) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& p : set.pairs) {
    for (int i = 0; i < 8; ++i) out << p.m.bloch(i) << ',';
    for (int i = 0; i < 8; ++i) out << p.n.bloch(i) << (i == 7 ? '\n' : ',');
  }
  return out.str();
}

}  // namespace posmap
