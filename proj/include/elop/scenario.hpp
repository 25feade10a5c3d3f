/*
   Copyright 2026 The elop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELOP_SCENARIO_HPP
#define ELOP_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "elop/criteria.hpp"
#include "elop/errors.hpp"
#include "elop/finite_rank.hpp"
#include "elop/report.hpp"
#include "elop/weighted_operator.hpp"

namespace elop {

namespace config_detail {

struct KeyValue {
  std::string key;
  std::vector<std::string> values;
  int line = 0;
};

struct Section {
  std::string keyword;  // "operator", "run", "F", ...
  std::string label;    // optional second token before '{'
  int line = 0;
  std::vector<KeyValue> pairs;
  std::vector<Section> children;

  const KeyValue* find(const std::string& key) const {
    for (const auto& kv : pairs) {
      if (kv.key == key) return &kv;
    }
    return nullptr;
  }
};

/// Nested key-value grammar: '#' starts a comment, "name [label] {" opens a
/// section, "}" closes it, anything else is "key value...".  Braces may share
/// a line with their content ("F { projection 2 }"), but a key-value pair
/// never spans lines.
inline Section parse_tree(const std::string& text) {
  Section root;
  std::vector<Section*> stack{&root};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto flush = [&](std::vector<std::string>& buffer) {
    if (buffer.empty()) return;
    KeyValue kv;
    kv.key = buffer.front();
    kv.values.assign(buffer.begin() + 1, buffer.end());
    kv.line = lineno;
    stack.back()->pairs.push_back(std::move(kv));
    buffer.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> buffer;
    for (std::string tok; ls >> tok;) {
      if (tok == "{") {
        if (buffer.empty() || buffer.size() > 2) {
          throw parse_error(lineno, "section header must be 'name [label] {'");
        }
        Section child;
        child.keyword = buffer[0];
        if (buffer.size() == 2) child.label = buffer[1];
        child.line = lineno;
        buffer.clear();
        stack.back()->children.push_back(std::move(child));
        stack.push_back(&stack.back()->children.back());
      } else if (tok == "}") {
        flush(buffer);
        if (stack.size() == 1) throw parse_error(lineno, "unmatched '}'");
        stack.pop_back();
      } else {
        buffer.push_back(std::move(tok));
      }
    }
    flush(buffer);
  }
  if (stack.size() != 1) throw parse_error(lineno, "unclosed section '" + stack.back()->keyword + "'");
  return root;
}

inline std::int64_t to_int(const KeyValue& kv, std::size_t pos) {
  if (pos >= kv.values.size()) throw parse_error(kv.line, "'" + kv.key + "' is missing a value");
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(kv.values[pos], &used);
    if (used != kv.values[pos].size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw parse_error(kv.line, "'" + kv.key + "' expects an integer, got '" + kv.values[pos] + "'");
  }
}

inline double to_real(const KeyValue& kv, std::size_t pos) {
  if (pos >= kv.values.size()) throw parse_error(kv.line, "'" + kv.key + "' is missing a value");
  try {
    std::size_t used = 0;
    const double v = std::stod(kv.values[pos], &used);
    if (used != kv.values[pos].size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw parse_error(kv.line, "'" + kv.key + "' expects a number, got '" + kv.values[pos] + "'");
  }
}

inline std::string to_word(const KeyValue& kv, std::size_t pos) {
  if (pos >= kv.values.size()) throw parse_error(kv.line, "'" + kv.key + "' is missing a value");
  return kv.values[pos];
}

}  // namespace config_detail

/// Declarative finite-rank operand: a leading projection or a triplet list.
struct OperandSpec {
  enum class Kind { projection, entries };
  Kind kind = Kind::projection;
  Index m = 0;
  std::vector<std::tuple<Index, Index, std::string>> triplets;
  bool present = false;
  int line = 0;

  FiniteRankOperator build(scalar_mode mode) const {
    if (!present) throw configuration_error("operand was not declared");
    if (kind == Kind::projection) return projection_operator(SubspaceSpec::leading(m), mode);
    FiniteRankOperator f(mode);
    for (const auto& [i, j, text] : triplets) f.accumulate(i, j, Scalar::parse(text, mode));
    return f;
  }
};

struct RunSpec {
  int index = 0;
  std::string id;
  int line = 0;
  std::string kind;   // criterion | witness | orbit | norms
  std::string which;  // subkind within the run kind
  std::string u_name;
  std::string w_name;
  Index m = 0;
  std::vector<Index> k_indices;
  std::vector<std::int64_t> schedule;
  std::vector<std::int64_t> schedule_backward;
  std::optional<double> tol;
  std::optional<double> threshold;
  std::optional<int> window;
  std::optional<double> tail_ratio;
  std::optional<int> tail_run;
  std::optional<int> tail_max_terms;
  Index k_max = 16;
  std::int64_t limit = 64;
  std::int64_t horizon = 0;
  std::string direction = "forward";
  std::string norm_kind = "operator";
  std::string variant = "split";
  std::int64_t power_min = 0;
  std::int64_t power_max = 0;
  OperandSpec f, g, g1, g2, start;
  std::vector<OperandSpec> targets;
};

struct ScenarioConfig {
  std::string name = "scenario";
  scalar_mode mode = scalar_mode::exact;
  std::string out_dir = "reports";
  std::vector<std::string> formats = {"json", "csv", "table"};
  double threshold = 1e-6;
  int window = 3;
  double float_tolerance = kFloatTolerance;
  std::int64_t orbit_horizon = WeightedPermutationOperator::kDefaultOrbitHorizon;
  std::size_t support_cap = 100000;
  TailPolicy tail;
  std::map<std::string, WeightedPermutationOperator> operators;
  std::vector<RunSpec> runs;
  std::string raw_text;
  std::string hash;

  const WeightedPermutationOperator& op(const std::string& name, int line) const {
    auto it = operators.find(name);
    if (it == operators.end()) {
      throw parse_error(line, "run references undeclared operator '" + name + "'");
    }
    return it->second;
  }

  DecayOptions decay_options(const RunSpec& run) const {
    DecayOptions o;
    o.threshold = run.threshold.value_or(threshold);
    o.window = run.window.value_or(window);
    o.slack = mode == scalar_mode::floating ? float_tolerance : 0.0;
    if (!(o.threshold > 0.0)) throw configuration_error("threshold must be positive");
    return o;
  }

  TailPolicy tail_policy(const RunSpec& run) const {
    TailPolicy t = tail;
    if (run.tail_ratio) t.ratio = *run.tail_ratio;
    if (run.tail_run) t.run = *run.tail_run;
    if (run.tail_max_terms) t.max_terms = *run.tail_max_terms;
    t.validate();
    return t;
  }
};

namespace config_detail {

inline WeightedPermutationOperator build_operator(const Section& sec, scalar_mode mode) {
  const KeyValue* perm = sec.find("permutation");
  if (!perm) throw parse_error(sec.line, "operator '" + sec.label + "' needs a 'permutation' key");
  const std::string kind = to_word(*perm, 0);
  const std::size_t arity = kind == "cycle" ? 2 : 1;
  if (perm->values.size() != arity) {
    throw parse_error(perm->line, "permutation '" + kind + "' takes " + std::to_string(arity) +
                                      " value(s); one key-value pair per line");
  }
  PermutationRule rule = [&]() {
    if (kind == "identity") return identity_rule();
    if (kind == "zigzag_successor") return zigzag_successor_rule();
    if (kind == "zigzag_predecessor") return zigzag_predecessor_rule();
    if (kind == "cycle") return cyclic_blocks_rule(to_int(*perm, 1));
    throw parse_error(perm->line, "unknown permutation kind '" + kind + "'");
  }();

  WeightRule weights;
  const KeyValue* modulus = sec.find("weight_modulus");
  weights.modulus = modulus ? to_int(*modulus, 0) : 1;
  if (weights.modulus < 1) throw parse_error(sec.line, "weight_modulus must be >= 1");
  weights.residue.assign(static_cast<std::size_t>(weights.modulus), Scalar::one(mode));
  std::vector<bool> seen(static_cast<std::size_t>(weights.modulus), false);
  for (const auto& kv : sec.pairs) {
    try {
      if (kv.key == "weight") {
        const std::int64_t r = to_int(kv, 0);
        if (r < 0 || r >= weights.modulus) throw parse_error(kv.line, "weight residue out of range");
        weights.residue[static_cast<std::size_t>(r)] = Scalar::parse(to_word(kv, 1), mode);
        seen[static_cast<std::size_t>(r)] = true;
      } else if (kv.key == "weight_at") {
        weights.exceptions[to_int(kv, 0)] = Scalar::parse(to_word(kv, 1), mode);
      } else if (kv.key != "permutation" && kv.key != "weight_modulus") {
        throw parse_error(kv.line, "unknown operator key '" + kv.key + "'");
      }
    } catch (const domain_error& e) {
      throw parse_error(kv.line, e.what());
    }
  }
  if (modulus) {
    for (std::size_t r = 0; r < seen.size(); ++r) {
      if (!seen[r]) {
        throw parse_error(sec.line, "missing weight for residue class " + std::to_string(r));
      }
    }
  }
  try {
    return WeightedPermutationOperator(std::move(rule), std::move(weights), sec.label);
  } catch (const configuration_error& e) {
    throw parse_error(sec.line, e.what());
  }
}

inline OperandSpec parse_operand(const Section& sec) {
  OperandSpec spec;
  spec.present = true;
  spec.line = sec.line;
  const KeyValue* proj = sec.find("projection");
  if (proj) {
    spec.kind = OperandSpec::Kind::projection;
    spec.m = to_int(*proj, 0);
    if (spec.m < 1) throw parse_error(proj->line, "projection size must be >= 1");
    return spec;
  }
  spec.kind = OperandSpec::Kind::entries;
  for (const auto& kv : sec.pairs) {
    if (kv.key == "entry") {
      spec.triplets.emplace_back(to_int(kv, 0), to_int(kv, 1), to_word(kv, 2));
    } else {
      throw parse_error(kv.line, "operand sections accept 'projection m' or 'entry i j value'");
    }
  }
  return spec;
}

inline std::vector<std::int64_t> parse_schedule(const KeyValue& kv) {
  const std::string form = to_word(kv, 0);
  std::vector<std::int64_t> values;
  if (form == "offset") {
    if (kv.values.size() != 4 || to_word(kv, 2) != "count") {
      throw parse_error(kv.line, "schedule offset form is 'offset O count K'");
    }
    const std::int64_t offset = to_int(kv, 1);
    const std::int64_t count = to_int(kv, 3);
    if (count < 1) throw parse_error(kv.line, "schedule count must be >= 1");
    for (std::int64_t k = 1; k <= count; ++k) values.push_back(k + offset);
  } else if (form == "list") {
    for (std::size_t i = 1; i < kv.values.size(); ++i) values.push_back(to_int(kv, i));
  } else {
    throw parse_error(kv.line, "schedule forms are 'offset O count K' or 'list n1 n2 ...'");
  }
  try {
    detail::require_schedule(values);
  } catch (const configuration_error& e) {
    throw parse_error(kv.line, e.what());
  }
  return values;
}

inline RunSpec parse_run(const Section& sec, int index) {
  RunSpec run;
  run.index = index;
  run.id = sec.label.empty() ? ("run" + std::to_string(index)) : sec.label;
  run.line = sec.line;
  for (const auto& kv : sec.pairs) {
    if (kv.key == "kind") run.kind = to_word(kv, 0);
    else if (kv.key == "which") run.which = to_word(kv, 0);
    else if (kv.key == "U") run.u_name = to_word(kv, 0);
    else if (kv.key == "W") run.w_name = to_word(kv, 0);
    else if (kv.key == "m") run.m = to_int(kv, 0);
    else if (kv.key == "K") {
      for (std::size_t i = 0; i < kv.values.size(); ++i) run.k_indices.push_back(to_int(kv, i));
    } else if (kv.key == "schedule") run.schedule = parse_schedule(kv);
    else if (kv.key == "schedule_backward") run.schedule_backward = parse_schedule(kv);
    else if (kv.key == "tol") run.tol = to_real(kv, 0);
    else if (kv.key == "threshold") run.threshold = to_real(kv, 0);
    else if (kv.key == "window") run.window = static_cast<int>(to_int(kv, 0));
    else if (kv.key == "tail_ratio") run.tail_ratio = to_real(kv, 0);
    else if (kv.key == "tail_run") run.tail_run = static_cast<int>(to_int(kv, 0));
    else if (kv.key == "tail_max_terms") run.tail_max_terms = static_cast<int>(to_int(kv, 0));
    else if (kv.key == "k_max") run.k_max = to_int(kv, 0);
    else if (kv.key == "limit") run.limit = to_int(kv, 0);
    else if (kv.key == "horizon") run.horizon = to_int(kv, 0);
    else if (kv.key == "direction") run.direction = to_word(kv, 0);
    else if (kv.key == "norm") run.norm_kind = to_word(kv, 0);
    else if (kv.key == "variant") run.variant = to_word(kv, 0);
    else if (kv.key == "powers") {
      run.power_min = to_int(kv, 0);
      run.power_max = to_int(kv, 1);
    } else {
      throw parse_error(kv.line, "unknown run key '" + kv.key + "'");
    }
  }
  for (const auto& child : sec.children) {
    if (child.keyword == "F") run.f = parse_operand(child);
    else if (child.keyword == "G") run.g = parse_operand(child);
    else if (child.keyword == "G1") run.g1 = parse_operand(child);
    else if (child.keyword == "G2") run.g2 = parse_operand(child);
    else if (child.keyword == "start") run.start = parse_operand(child);
    else if (child.keyword == "target") run.targets.push_back(parse_operand(child));
    else throw parse_error(child.line, "unknown run section '" + child.keyword + "'");
  }
  if (run.kind.empty()) throw parse_error(sec.line, "run '" + run.id + "' needs a 'kind' key");
  return run;
}

}  // namespace config_detail

/// Parses and validates a scenario; every cross-reference is resolved and
/// every operator is built eagerly so bad declarations fail here, with line
/// information, rather than mid-run.
inline ScenarioConfig parse_config(const std::string& text,
                                   std::optional<scalar_mode> mode_override = std::nullopt) {
  using namespace config_detail;
  const Section root = parse_tree(text);
  ScenarioConfig cfg;
  cfg.raw_text = text;
  cfg.hash = config_hash(text);

  for (const auto& kv : root.pairs) {
    if (kv.key == "scenario") cfg.name = to_word(kv, 0);
    else if (kv.key == "mode") {
      const std::string m = to_word(kv, 0);
      if (m == "exact") cfg.mode = scalar_mode::exact;
      else if (m == "float") cfg.mode = scalar_mode::floating;
      else throw parse_error(kv.line, "mode must be 'exact' or 'float'");
    } else if (kv.key == "out") cfg.out_dir = to_word(kv, 0);
    else if (kv.key == "formats") cfg.formats = kv.values;
    else if (kv.key == "threshold") cfg.threshold = to_real(kv, 0);
    else if (kv.key == "window") cfg.window = static_cast<int>(to_int(kv, 0));
    else if (kv.key == "float_tolerance") cfg.float_tolerance = to_real(kv, 0);
    else if (kv.key == "orbit_horizon") cfg.orbit_horizon = to_int(kv, 0);
    else if (kv.key == "support_cap") cfg.support_cap = static_cast<std::size_t>(to_int(kv, 0));
    else if (kv.key == "tail_ratio") cfg.tail.ratio = to_real(kv, 0);
    else if (kv.key == "tail_run") cfg.tail.run = static_cast<int>(to_int(kv, 0));
    else if (kv.key == "tail_max_terms") cfg.tail.max_terms = static_cast<int>(to_int(kv, 0));
    else throw parse_error(kv.line, "unknown top-level key '" + kv.key + "'");
  }
  if (mode_override) cfg.mode = *mode_override;
  if (!(cfg.threshold > 0.0)) throw parse_error(1, "threshold must be positive");
  if (cfg.window < 1) throw parse_error(1, "window must be >= 1");
  try {
    cfg.tail.validate();
  } catch (const configuration_error& e) {
    throw parse_error(1, e.what());
  }

  int run_index = 0;
  for (const auto& child : root.children) {
    if (child.keyword == "operator") {
      if (child.label.empty()) throw parse_error(child.line, "operator sections need a name");
      if (cfg.operators.count(child.label)) {
        throw parse_error(child.line, "duplicate operator '" + child.label + "'");
      }
      auto op = build_operator(child, cfg.mode);
      op.set_orbit_horizon(cfg.orbit_horizon);
      cfg.operators.emplace(child.label, std::move(op));
    } else if (child.keyword == "run") {
      cfg.runs.push_back(parse_run(child, ++run_index));
    } else {
      throw parse_error(child.line, "unknown section '" + child.keyword + "'");
    }
  }

  // Cross-reference validation.
  for (const auto& run : cfg.runs) {
    if (!run.u_name.empty()) cfg.op(run.u_name, run.line);
    if (!run.w_name.empty()) cfg.op(run.w_name, run.line);
  }
  return cfg;
}

}  // namespace elop

#endif  // ELOP_SCENARIO_HPP
