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

#ifndef ELOP_RUNNER_HPP
#define ELOP_RUNNER_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elop/elementary.hpp"
#include "elop/report.hpp"
#include "elop/scenario.hpp"
#include "elop/witnesses.hpp"

namespace elop {

struct RunOutcome {
  int executed = 0;
  int errored = 0;
  std::vector<std::string> written;                          // report file paths
  std::vector<std::pair<std::string, std::string>> results;  // (run file stem, verdict or "error")
};

namespace runner_detail {

inline std::string run_stem(const RunSpec& run) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d_", run.index);
  return buf + run.id;
}

inline NormKind parse_norm_kind(const std::string& name) {
  if (name == "operator") return NormKind::op;
  if (name == "trace") return NormKind::trace;
  throw configuration_error("unknown norm kind '" + name + "' (use operator|trace)");
}

inline OrbitDirection parse_direction(const std::string& name) {
  if (name == "forward") return OrbitDirection::forward;
  if (name == "backward") return OrbitDirection::backward;
  if (name == "cosine") return OrbitDirection::cosine;
  throw configuration_error("unknown orbit direction '" + name + "'");
}

/// Reports are append-only: never truncate an existing file.
inline void append_file(const std::filesystem::path& path, const std::string& content,
                        RunOutcome& outcome) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing report file " + path.string());
  outcome.written.push_back(path.string());
}

inline std::vector<std::int64_t> resolve_schedule(const ScenarioConfig& cfg, const RunSpec& run) {
  if (!run.schedule.empty()) return run.schedule;
  // Default schedule n_k = k + N_m with N_m the orthogonality horizon of U.
  if (run.u_name.empty() || run.m < 1) {
    throw configuration_error("run '" + run.id + "' needs an explicit schedule");
  }
  const auto horizon = orthogonality_horizon(cfg.op(run.u_name, run.line), run.m, 64);
  if (!horizon) {
    throw configuration_error("run '" + run.id +
                              "': no orthogonality horizon found; give an explicit schedule");
  }
  std::vector<std::int64_t> values;
  for (std::int64_t k = 1; k <= 24; ++k) values.push_back(k + *horizon);
  return values;
}

inline ElementarySystem make_system(const ScenarioConfig& cfg, const RunSpec& run) {
  if (run.u_name.empty() || run.w_name.empty()) {
    throw configuration_error("run '" + run.id + "' needs both 'U' and 'W' operators");
  }
  return ElementarySystem(cfg.op(run.u_name, run.line), cfg.op(run.w_name, run.line),
                          cfg.support_cap);
}

inline CriterionReport run_criterion(const ScenarioConfig& cfg, const RunSpec& run) {
  const DecayOptions opts = cfg.decay_options(run);
  if (run.which == "orthogonality") {
    const auto& u = cfg.op(run.u_name, run.line);
    CriterionReport rep;
    rep.id = "orthogonality";
    rep.family = "orthogonality horizon of the unitary on leading blocks";
    rep.parameters["limit"] = std::to_string(run.limit);
    bool all_found = true;
    for (Index k = 1; k <= run.k_max; ++k) {
      const auto n = orthogonality_horizon(u, k, run.limit);
      if (n) {
        rep.decay.push_back({static_cast<int>(k), *n, "N_k", Scalar::exact(*n)});
      } else {
        all_found = false;
        rep.notes.push_back("no horizon for k=" + std::to_string(k) + " within the sweep limit");
      }
    }
    rep.verdict = all_found ? Verdict::pass : Verdict::inconclusive;
    return rep;
  }

  const auto& w = cfg.op(run.w_name, run.line);
  if (run.which == "necessary_modulus") {
    return check_necessary_m_condition(w, run.schedule);
  }
  const auto schedule = resolve_schedule(cfg, run);
  if (run.which == "transitive_decay") {
    return check_hypercyclicity_condition(w, run.m, schedule, opts);
  }
  if (run.which == "zero_transitive") {
    const SubspaceSpec k_space =
        run.k_indices.empty() ? SubspaceSpec::leading(run.m) : SubspaceSpec(run.k_indices);
    const auto backward = run.schedule_backward.empty() ? schedule : run.schedule_backward;
    return check_zero_transitivity(w, k_space, schedule, backward, opts);
  }
  if (run.which == "periodic_series") {
    return check_series_condition(w, run.m, schedule, cfg.tail_policy(run), opts);
  }
  if (run.which == "cosine_split") {
    const SplitWitness split = find_cosine_split(w, run.m, schedule, opts);
    CriterionReport rep;
    rep.id = "cosine_split";
    rep.family = "cosine transitivity: split of the leading block into decaying halves";
    rep.parameters["m"] = std::to_string(run.m);
    rep.parameters["schedule"] = detail::schedule_text(schedule);
    rep.parameters["threshold"] = std::to_string(opts.threshold);
    if (!split.per_k.empty()) {
      rep.parameters["final_split_e"] = split.per_k.back().e.to_text();
      rep.parameters["final_split_r"] = split.per_k.back().r.to_text();
    }
    for (const auto& e : split.per_k) {
      rep.decay.push_back({e.k, 2 * e.n, "split_forward_norm", e.forward_norm});
      rep.decay.push_back({e.k, 2 * e.n, "split_backward_norm", e.backward_norm});
      rep.decay.push_back({e.k, e.n, "proj_forward_norm",
                           w.norm_power_proj(e.n, SubspaceSpec::leading(split.m))});
      rep.decay.push_back({e.k, e.n, "proj_backward_norm",
                           w.norm_power_proj(-e.n, SubspaceSpec::leading(split.m))});
    }
    rep.notes.push_back("proj_* rows are the undoubled block compressions; the verdict tracks the split rows");
    rep.verdict = split.verdict;
    return rep;
  }
  if (run.which == "dual_plain" || run.which == "dual_split") {
    const DualVariant variant =
        run.which == "dual_split" ? DualVariant::with_split : DualVariant::plain;
    return check_adjoint_conditions(w, run.m, schedule, variant, opts);
  }
  throw configuration_error("unknown criterion '" + run.which + "'");
}

inline WitnessRun run_witness(const ScenarioConfig& cfg, const RunSpec& run) {
  const ElementarySystem sys = make_system(cfg, run);
  const auto schedule = resolve_schedule(cfg, run);
  if (run.which == "transitive") {
    const double tol = run.tol.value_or(1e-6);
    return transitive_witness(sys, run.f.build(cfg.mode), run.g.build(cfg.mode), run.m, schedule, tol);
  }
  if (run.which == "periodic") {
    const double tol = run.tol.value_or(1e-6);
    const TailPolicy tail = cfg.tail_policy(run);
    WitnessRun merged;
    merged.kind = "periodic";
    merged.parameters["tol"] = std::to_string(tol);
    bool all_pass = true;
    bool any_inconclusive = false;
    const FiniteRankOperator f = run.f.build(cfg.mode);
    int k = 1;
    for (std::int64_t n : schedule) {
      WitnessRun one = periodic_witness(sys, f, n, tol, tail);
      for (auto& rec : one.records) {
        rec.k = k;
        merged.records.push_back(std::move(rec));
      }
      for (const auto& note : one.notes) {
        merged.notes.push_back("n=" + std::to_string(n) + ": " + note);
      }
      all_pass = all_pass && one.verdict == Verdict::pass;
      any_inconclusive = any_inconclusive || one.verdict == Verdict::inconclusive;
      ++k;
    }
    merged.verdict = any_inconclusive ? Verdict::inconclusive
                                      : (all_pass ? Verdict::pass : Verdict::fail);
    return merged;
  }
  if (run.which == "cosine" || run.which == "adjoint_cosine") {
    const double tol = run.tol.value_or(1e-4);
    const SplitWitness split = find_cosine_split(sys.w(), run.m, schedule, cfg.decay_options(run));
    if (run.which == "cosine") {
      return cosine_witness_run(sys, run.f.build(cfg.mode), run.g.build(cfg.mode), split, tol);
    }
    return adjoint_cosine_witness_run(sys, run.g1.build(cfg.mode), run.g2.build(cfg.mode), split, tol);
  }
  throw configuration_error("unknown witness kind '" + run.which + "'");
}

}  // namespace runner_detail

/// Executes the scenario's runs (optionally restricted to one run kind) and
/// writes one report per run and format under out_dir/<scenario>/.
inline RunOutcome run_scenario(const ScenarioConfig& cfg,
                               const std::optional<std::string>& only_kind = std::nullopt,
                               const std::optional<std::string>& out_override = std::nullopt) {
  namespace fs = std::filesystem;
  using namespace runner_detail;
  RunOutcome outcome;
  const fs::path dir = fs::path(out_override.value_or(cfg.out_dir)) / cfg.name;
  fs::create_directories(dir);
  const std::set<std::string> formats(cfg.formats.begin(), cfg.formats.end());

  for (const auto& run : cfg.runs) {
    if (only_kind && run.kind != *only_kind) continue;
    ++outcome.executed;
    const std::string stem = run_stem(run);
    Json j;
    std::string csv, table, verdict;
    try {
      if (run.kind == "criterion") {
        CriterionReport rep = run_criterion(cfg, run);
        j = to_json(rep);
        csv = decay_csv(rep);
        table = render_table(rep);
        verdict = to_string(rep.verdict);
      } else if (run.kind == "witness") {
        WitnessRun rep = run_witness(cfg, run);
        j = to_json(rep);
        csv = records_csv(rep);
        table = render_table(rep);
        verdict = to_string(rep.verdict);
      } else if (run.kind == "orbit") {
        const ElementarySystem sys = make_system(cfg, run);
        if (run.which == "approach") {
          std::vector<FiniteRankOperator> targets;
          for (const auto& t : run.targets) targets.push_back(t.build(cfg.mode));
          const auto rows = orbit_approach(sys, run.start.build(cfg.mode), targets, run.horizon);
          j["kind"] = "orbit_approach";
          j["rows"] = Json::array();
          std::ostringstream c;
          c << "target,best_n,best_distance\n";
          for (const auto& row : rows) {
            Json r;
            r["target"] = row.target;
            r["best_n"] = row.best_n;
            r["best_distance"] = row.best_distance;
            j["rows"].push_back(std::move(r));
            c << row.target << ',' << row.best_n << ','
              << detail::format_double(row.best_distance) << '\n';
          }
          csv = c.str();
          table = csv;
          verdict = "done";
        } else {
          const auto profile =
              orbit_profile(sys, run.start.build(cfg.mode), run.horizon,
                            parse_norm_kind(run.norm_kind), parse_direction(run.direction));
          j = to_json(profile);
          csv = profile_csv(profile);
          table = csv;
          verdict = "done";
        }
      } else if (run.kind == "norms") {
        const auto& w = cfg.op(run.w_name, run.line);
        const SubspaceSpec s =
            run.k_indices.empty() ? SubspaceSpec::leading(run.m) : SubspaceSpec(run.k_indices);
        CriterionReport rep;
        rep.id = "compression_norms";
        rep.family = "raw compression-norm table";
        rep.parameters["subspace"] = s.to_text();
        if (run.power_min > run.power_max) {
          throw configuration_error("norms run needs powers a b with a <= b");
        }
        int k = 1;
        for (std::int64_t n = run.power_min; n <= run.power_max; ++n, ++k) {
          rep.decay.push_back({k, n, "right_norm", w.norm_power_proj(n, s)});
          rep.decay.push_back({k, n, "left_norm", w.proj_norm_power(s, n)});
        }
        rep.verdict = Verdict::pass;
        rep.notes.push_back("table only; the verdict carries no meaning here");
        j = to_json(rep);
        csv = decay_csv(rep);
        table = render_table(rep);
        verdict = "done";
      } else {
        throw configuration_error("unknown run kind '" + run.kind + "'");
      }
    } catch (const std::exception& e) {
      ++outcome.errored;
      outcome.results.emplace_back(stem, "error");
      Json err;
      err["kind"] = "error";
      err["run"] = stem;
      err["scenario"] = cfg.name;
      err["config_hash"] = cfg.hash;
      err["message"] = e.what();
      if (formats.count("json")) append_file(dir / (stem + ".json"), err.dump(2) + "\n", outcome);
      continue;
    }
    j["run"] = stem;
    j["scenario"] = cfg.name;
    j["mode"] = to_string(cfg.mode);
    j["config_hash"] = cfg.hash;
    Json ops = Json::object();
    if (!run.u_name.empty()) ops[run.u_name] = cfg.op(run.u_name, run.line).describe();
    if (!run.w_name.empty()) ops[run.w_name] = cfg.op(run.w_name, run.line).describe();
    j["operators"] = std::move(ops);
    outcome.results.emplace_back(stem, verdict);
    if (formats.count("json")) append_file(dir / (stem + ".json"), j.dump(2) + "\n", outcome);
    if (formats.count("csv") && !csv.empty()) append_file(dir / (stem + ".csv"), csv, outcome);
    if (formats.count("table") && !table.empty()) append_file(dir / (stem + ".txt"), table, outcome);
  }
  return outcome;
}

}  // namespace elop

#endif  // ELOP_RUNNER_HPP
