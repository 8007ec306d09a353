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

#include "posmap/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "posmap/catalog.hpp"

namespace posmap {

namespace {

const std::vector<std::string> kCommands = {"convert", "check",   "classify", "decompose",
                                            "reduce",  "extreme", "catalog",  "pipeline"};

struct Defaults {
  double tol;
  long budget;
};

Defaults defaults_for(const std::string& command) {
  if (command == "classify" || command == "reduce") return {1e-8, 100000};
  return {1e-8, 200000};
}

MapMatrix require_map(const ParsedInput& in) {
  if (const auto* m = std::get_if<MapMatrix>(&in)) return *m;
  throw InputError("this command needs an 8x8 map matrix or a map generator");
}

std::string matrix_csv(const Mat8& m) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out << m(i, j) << (j == 7 ? '\n' : ',');
  return out.str();
}

Json convert_result(const ParsedInput& in) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MapMatrix>) {
          return {{"kind", "map"}, {"matrix", to_json(v)}, {"norm", operator_norm(v)}};
        } else if constexpr (std::is_same_v<T, Hermitian3>) {
          return {{"kind", "hermitian"}, {"matrix", to_json(v)}, {"coherence", to_json(to_coherence(v))}};
        } else {
          return {{"kind", "coherence"}, {"coherence", to_json(v)}, {"matrix", to_json(from_coherence(v))}};
        }
      },
      in);
}

struct Outcome {
  Json result;
  int code = kAffirmative;
  std::string csv;
};

Outcome dispatch(const Request& rq, double tol, long budget) {
  Outcome o;
  const bool csv = rq.format == "csv";
  const auto& c = rq.command;

  if (c == "catalog") {
    if (rq.input.empty()) {
      Json list = Json::array();
      for (const auto& name : generator_names()) list.push_back(name);
      o.result = {{"generators", list}};
      return o;
    }
    const auto m = resolve_generator(rq.input);
    if (!m) throw InputError("unknown generator: " + rq.input);
    o.result = {{"generator", rq.input}, {"matrix", to_json(*m)}};
    if (csv) o.csv = matrix_csv(*m);
    return o;
  }

  const ParsedInput in = resolve_input(rq.input);
  if (c == "convert") {
    o.result = convert_result(in);
    if (csv) {
      const auto* m = std::get_if<MapMatrix>(&in);
      if (!m) throw InputError("csv output of convert is only defined for map matrices");
      o.csv = matrix_csv(*m);
    }
    return o;
  }

  const MapMatrix x = require_map(in);
  if (csv && c != "extreme" && c != "pipeline")
    throw InputError("csv output is available for convert, catalog, extreme and pipeline");

  if (c == "check") {
    const PositivityReport r = is_positive(x, tol, budget, rq.seed);
    o.result = to_json(r);
    o.code = r.positive() ? kAffirmative : kNegative;
  } else if (c == "classify") {
    const IdempotentRecord e = idempotent_of(x, tol);
    const CandidateGroup g = classify_candidate(x, budget, rq.seed);
    o.result = to_json(g);
    o.result["idempotent"] = to_json(e);
    o.code = g.tag == CandidateTag::Other ? kNegative : kAffirmative;
  } else if (c == "decompose") {
    const Decomposition d = decompose(x, idempotent_of(x, tol), tol);
    o.result = to_json(d);
    o.result["q_index"] = to_json(q_index(d));
  } else if (c == "reduce") {
    OrbitSettings s;
    s.budget = budget;
    s.seed = rq.seed;
    o.result = to_json(reduce_canonical(x, s));
  } else if (c == "extreme") {
    ExtremalitySettings s;
    s.positivity_tol = tol;
    s.positivity_budget = budget;
    s.active.budget = budget;
    s.active.seed = rq.seed;
    const ExtremalityReport r = extreme_in_lambda(x, s);
    o.result = to_json(r);
    o.code = r.verdict == ExtremalityVerdict::CertifiedExtreme ? kAffirmative : kNegative;
    if (csv) o.csv = active_pairs_csv(r.active);
  } else if (c == "pipeline") {
    const ClassificationRecord r = classify_record(x, {tol, budget, rq.seed});
    o.result = to_json(r);
    o.code = r.errors.empty() ? kAffirmative : kNegative;
    if (csv) o.csv = r.extremality ? active_pairs_csv(r.extremality->active) : std::string();
  } else {
    throw InputError("unknown command: " + c);
  }
  return o;
}

void emit(const Request& rq, const std::string& text, std::ostream& out) {
  if (rq.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(rq.output, std::ios::binary);
  if (!f) throw InputError("cannot open output file: " + rq.output);
  f << text;
}

}  // namespace

ClassificationRecord classify_record(const MapMatrix& x, const PipelineSettings& s) {
  ClassificationRecord r;
  r.norm = operator_norm(x);
  r.positivity = is_positive(x, s.tol, s.budget, s.seed);
  if (!r.positivity.positive()) {
    r.errors.push_back("not in Lambda: " + r.positivity.note);
    return r;
  }
  try {
    IdempotentRecord e = idempotent_of(x, s.tol);
    e.membership_verified = true;
    r.idempotent = e;
    r.decomposition = decompose(x, e, s.tol);
    r.q = q_index(*r.decomposition);
  } catch (const Error& err) {
    r.errors.push_back(err.what());
    return r;
  }
  try {
    r.candidate = classify_candidate(x, s.budget, s.seed);
  } catch (const Error& err) {
    r.errors.push_back(err.what());
  }
  try {
    ExtremalitySettings es;
    es.positivity_tol = s.tol;
    es.positivity_budget = s.budget;
    es.active.budget = s.budget;
    es.active.seed = s.seed;
    r.extremality = extreme_in_lambda(x, es);
  } catch (const Error& err) {
    r.errors.push_back(err.what());
  }
  return r;
}

Json to_json(const ClassificationRecord& r) {
  Json j{{"norm", r.norm}, {"positivity", to_json(r.positivity)}, {"errors", r.errors}};
  j["idempotent"] = r.idempotent ? to_json(*r.idempotent) : Json(nullptr);
  j["decomposition"] = r.decomposition ? to_json(*r.decomposition) : Json(nullptr);
  j["q_index"] = r.q ? to_json(*r.q) : Json(nullptr);
  j["candidate"] = r.candidate ? to_json(*r.candidate) : Json(nullptr);
  j["extremality"] = r.extremality ? to_json(*r.extremality) : Json(nullptr);
  return j;
}

ParsedInput resolve_input(const std::string& input) {
  if (input.empty()) throw InputError("no input given");
  if (auto m = resolve_generator(input)) return *m;
  std::ifstream f(input, std::ios::binary);
  if (!f) throw InputError("not a generator name and not a readable file: " + input);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_input_text(buf.str());
}

int run(const Request& rq, std::ostream& out, std::ostream& err) {
  const Defaults d = defaults_for(rq.command);
  const double tol = rq.tol.value_or(d.tol);
  const long budget = rq.budget.value_or(d.budget);

  Json report{{"command", rq.command},
              {"input", rq.input},
              {"provenance",
               {{"version", kVersion}, {"seed", rq.seed}, {"budget", budget}, {"tol", tol}}}};
  try {
    if (std::find(kCommands.begin(), kCommands.end(), rq.command) == kCommands.end())
      throw InputError("unknown command: " + rq.command);
    if (rq.format != "json" && rq.format != "csv") throw InputError("format must be json or csv");
    if (!(tol > 0.0)) throw InputError("tol must be positive");
    if (budget <= 0) throw InputError("budget must be positive");

    Outcome o;
    try {
      o = dispatch(rq, tol, budget);
    } catch (const PositivityViolation& v) {
      o.result = {{"verdict", "NotInLambda"}, {"message", v.what()}, {"witness_value", v.witness().value}};
      o.code = kNegative;
    } catch (const NotInLambdaError& v) {
      o.result = {{"verdict", "NotInLambda"}, {"message", v.what()}};
      o.code = kNegative;
    }
    report["result"] = o.result;
    report["exit_code"] = o.code;
    emit(rq, rq.format == "csv" ? o.csv : report.dump(2) + "\n", out);
    return o.code;
  } catch (const SearchFailure& e) {
    err << "search failure: " << e.what() << '\n';
    return kSearchFailure;
  } catch (const Error& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Positive bistochastic maps on M3: membership, idempotents, reduction, extremality"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Request rq;
  double tol = 0.0;
  long budget = 0;
  const std::vector<std::pair<std::string, std::string>> help = {
      {"convert", "Convert between matrix, coherence and map representations"},
      {"check", "Positivity test"},
      {"classify", "Candidate group of an extremal candidate"},
      {"decompose", "Idempotent and h + y decomposition"},
      {"reduce", "Reduction g1 z g2 to a canonical representative"},
      {"extreme", "Extreme-point test"},
      {"catalog", "List generators, or print the matrix of one"},
      {"pipeline", "Full classification record"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, text] : help) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->add_option("--input,-i", rq.input, "Generator name or JSON file")->required(name != "catalog");
    sub->add_option("--output,-o", rq.output, "Report path (default: stdout)");
    sub->add_option("--tol", tol, "Tolerance");
    sub->add_option("--budget", budget, "Evaluation budget");
    sub->add_option("--seed", rq.seed, "Random seed");
    sub->add_option("--format", rq.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    rq.command = sub->get_name();
    if (sub->count("--tol")) rq.tol = tol;
    if (sub->count("--budget")) rq.budget = budget;
  }
  return run(rq, std::cout, std::cerr);
}

}  // namespace posmap
