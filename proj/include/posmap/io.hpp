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

#include <string>
#include <variant>

#include <json.hpp>

#include "posmap/extremality.hpp"

namespace posmap {

using Json = nlohmann::json;

Json to_json(const Mat8& m);
Json to_json(const Hermitian3& a);
Json to_json(const CoherenceVector& v);
Json to_json(const Vec3c& ket);
Json to_json(const PositivityReport& r);
Json to_json(const IdempotentRecord& r);
Json to_json(const Decomposition& d);
Json to_json(const QIndex& q);
Json to_json(const ReductionResult& r);
Json to_json(const ExtremalityReport& r);
Json to_json(const CandidateGroup& g);

/// Row-major 8x8 array of reals. Throws InputError on any shape or type mismatch.
Mat8 map_from_json(const Json& j);
/// Row-major 3x3 array of [re, im] pairs.
Hermitian3 hermitian_from_json(const Json& j);
/// {"a0": r, "avec": [8 reals]}.
CoherenceVector coherence_from_json(const Json& j);

using ParsedInput = std::variant<MapMatrix, Hermitian3, CoherenceVector>;

/// Detects the schema by shape: 8x8 reals, 3x3 pairs, or an a0/avec object.
/// An object with a "matrix" member is unwrapped first, so reports written
/// by convert can be read back.
ParsedInput parse_input(const Json& j);
ParsedInput parse_input_text(const std::string& text);

/// One row per pair: the 8 components of m then the 8 of n.
std::string active_pairs_csv(const ActiveSet& set);

}  // namespace posmap
