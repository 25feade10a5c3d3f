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

#ifndef ELOP_WITNESSES_HPP
#define ELOP_WITNESSES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elop/criteria.hpp"
#include "elop/elementary.hpp"
#include "elop/errors.hpp"
#include "elop/finite_rank.hpp"

namespace elop {

/// One record of a witness construction: the power used, named residuals and
/// their proof-side bounds, optional exact values, and a triplet summary of
/// the constructed operator (elided beyond 32 entries).
struct WitnessRecord {
  int k = 0;
  std::int64_t n = 0;
  std::vector<std::pair<std::string, double>> values;
  std::map<std::string, std::string> exact;  // dyadic texts for exactly representable values
  std::vector<std::array<std::string, 3>> witness_triplets;

  double value(const std::string& name) const {
    for (const auto& [key, v] : values) {
      if (key == name) return v;
    }
    throw configuration_error("witness record has no value named '" + name + "'");
  }

  void summarize(const FiniteRankOperator& constructed) {
    values.emplace_back("witness_entries", static_cast<double>(constructed.entry_count()));
    if (constructed.entry_count() <= 32) witness_triplets = to_triplets(constructed);
  }
};

struct WitnessRun {
  std::string kind;  // transitive | periodic | cosine | adjoint_cosine
  std::map<std::string, std::string> parameters;
  std::vector<WitnessRecord> records;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;
};

namespace detail {

inline void require_support(const FiniteRankOperator& f, Index m, const char* who) {
  if (!f.supported_in(SubspaceSpec::leading(m))) {
    throw precondition_error(std::string(who) + ": operand support must lie inside the leading " +
                             std::to_string(m) + "-dimensional block");
  }
}

}  // namespace detail

struct LeadingTruncation {
  FiniteRankOperator truncated;  // P_m F P_m
  double error;                  // ||P_m F P_m - F||
};

/// Preprocessing step for witness targets: compresses an operand into the
/// leading m-block and reports the operator-norm error committed, so that
/// witness residuals stay attributable to decay rather than to truncation.
inline LeadingTruncation truncate_to_leading(const FiniteRankOperator& f, Index m) {
  if (m < 1) throw precondition_error("truncate_to_leading needs m >= 1");
  const SubspaceSpec lm = SubspaceSpec::leading(m);
  LeadingTruncation out{project_cols(project_rows(f, lm), lm), 0.0};
  out.error = distance(out.truncated, f, NormKind::op);
  return out;
}

/// Builds Phi_k = P_m F + T^{-n_k}(P_m G) along the schedule and logs both
/// defining residuals together with their proof-side bounds
///   ||Phi_k - F||          <= ||W^{-n_k} P_m|| ||G||
///   ||T^{n_k}(Phi_k) - G|| <= ||W^{n_k} P_m||  ||F||
/// (the projection error terms vanish because supports are confined to L_m).
inline WitnessRun transitive_witness(const ElementarySystem& sys, const FiniteRankOperator& f,
                                     const FiniteRankOperator& g, Index m,
                                     const std::vector<std::int64_t>& schedule, double tol = 1e-6) {
  detail::require_schedule(schedule);
  detail::require_support(f, m, "transitive_witness F");
  detail::require_support(g, m, "transitive_witness G");
  const auto horizon = orthogonality_horizon(sys.u(), m, std::max<std::int64_t>(64, schedule.back()));
  if (!horizon || schedule.front() < *horizon) {
    throw precondition_error("transitive_witness: schedule must start at or beyond the orthogonality horizon");
  }
  WitnessRun run;
  run.kind = "transitive";
  run.parameters["m"] = std::to_string(m);
  run.parameters["schedule"] = detail::schedule_text(schedule);
  run.parameters["tol"] = std::to_string(tol);
  run.parameters["orthogonality_horizon"] = std::to_string(*horizon);
  const SubspaceSpec lm = SubspaceSpec::leading(m);
  const Scalar one = Scalar::one(sys.mode());
  const double norm_f = operator_norm(f);
  const double norm_g = operator_norm(g);
  const FiniteRankOperator pf = project_rows(f, lm);
  const FiniteRankOperator pg = project_rows(g, lm);
  bool bounds_ok = true;
  int k = 1;
  for (std::int64_t n : schedule) {
    const FiniteRankOperator phi = combine(pf, t_apply(sys, -n, pg), one, one);
    const double residual1 = distance(phi, f, NormKind::op);
    const double residual2 = distance(t_apply(sys, n, phi), g, NormKind::op);
    const double bound1 = sys.w().norm_power_proj(-n, lm).to_double_clamped() * norm_g;
    const double bound2 = sys.w().norm_power_proj(n, lm).to_double_clamped() * norm_f;
    const bool ok = residual1 <= bound1 + kFloatTolerance && residual2 <= bound2 + kFloatTolerance;
    bounds_ok = bounds_ok && ok;
    WitnessRecord rec;
    rec.k = k;
    rec.n = n;
    rec.values = {{"residual1", residual1},
                  {"bound1", bound1},
                  {"residual2", residual2},
                  {"bound2", bound2},
                  {"bounds_ok", ok ? 1.0 : 0.0}};
    rec.summarize(phi);
    run.records.push_back(std::move(rec));
    ++k;
  }
  if (!bounds_ok) run.notes.push_back("a residual exceeded its proof-side bound");
  const auto& last = run.records.back();
  run.verdict = (bounds_ok && last.value("residual1") <= tol && last.value("residual2") <= tol)
                    ? Verdict::pass
                    : Verdict::fail;
  return run;
}

/// Truncated two-sided series G~ = sum_{l=0}^{Lf} T^{l n}(F) + sum_{l=1}^{Lb}
/// T^{-l n}(F).  Each branch stops at the smallest term count whose certified
/// geometric tail, counted from the last kept term onward, is below tol; the
/// period defect T^n(G~) - G~ then telescopes to the two boundary terms
/// T^{(Lf+1) n}(F) - T^{-Lb n}(F), so in exact mode it is asserted as an
/// exact operator identity and its norm is bounded by twice the tail bound.
inline WitnessRun periodic_witness(const ElementarySystem& sys, const FiniteRankOperator& f,
                                   std::int64_t n, double tol, const TailPolicy& tail = {}) {
  if (n < 1) throw configuration_error("periodic witness needs a positive power");
  if (!(tol > 0.0)) throw configuration_error("periodic witness tolerance must be positive");
  tail.validate();
  WitnessRun run;
  run.kind = "periodic";
  run.parameters["n"] = std::to_string(n);
  run.parameters["tol"] = std::to_string(tol);
  if (f.empty()) {
    WitnessRecord rec;
    rec.k = 1;
    rec.n = n;
    rec.values = {{"period_residual", 0.0}, {"proximity", 0.0}, {"tail_bound", 0.0}};
    run.records.push_back(std::move(rec));
    run.verdict = Verdict::pass;
    return run;
  }
  const Scalar one = Scalar::one(sys.mode());

  // Walk one branch, accumulating kept terms into acc; returns (term count,
  // tail bound from the last kept term) or nullopt when never certified.
  auto accumulate = [&](std::int64_t sign, FiniteRankOperator& acc,
                        std::vector<double>& term_norms) -> std::optional<std::pair<int, double>> {
    FiniteRankOperator term = f;
    double prev = -1.0;
    int certified_run = 0;
    int kept = 0;
    for (int l = 1; l <= tail.max_terms; ++l) {
      term = t_apply(sys, sign * n, term);
      const double tnorm = operator_norm(term);
      if (prev >= 0.0) {
        if ((prev > 0.0 && tnorm <= tail.ratio * prev) || (prev == 0.0 && tnorm == 0.0)) {
          ++certified_run;
        } else {
          certified_run = 0;
        }
      }
      prev = tnorm;
      acc = combine(acc, term, one, one);
      term_norms.push_back(tnorm);
      ++kept;
      if (certified_run >= tail.run) {
        const double from_last = tnorm / (1.0 - tail.ratio);  // bounds sum over l' >= l
        if (from_last < tol) return std::make_pair(kept, from_last);
      }
    }
    return std::nullopt;
  };

  FiniteRankOperator series = f;  // the l = 0 forward term
  std::vector<double> fwd_norms, bwd_norms;
  const auto fwd = accumulate(1, series, fwd_norms);
  const auto bwd = accumulate(-1, series, bwd_norms);
  if (!fwd || !bwd) {
    run.verdict = Verdict::inconclusive;
    run.notes.push_back("series terms never certified a geometric tail below tol");
    return run;
  }
  const auto [lf, tail_f] = *fwd;
  const auto [lb, tail_b] = *bwd;
  const double tail_bound = std::max(tail_f, tail_b);

  const FiniteRankOperator shifted = t_apply(sys, n, series);
  const double period_residual = distance(shifted, series, NormKind::op);
  const double proximity = distance(series, f, NormKind::op);

  // Boundary identity: first dropped forward term minus last kept backward term.
  const FiniteRankOperator boundary =
      combine(t_apply(sys, static_cast<std::int64_t>(lf + 1) * n, f),
              t_apply(sys, -static_cast<std::int64_t>(lb) * n, f), one, -one);
  const FiniteRankOperator defect = combine(shifted, series, one, -one);
  const bool boundary_exact = defect == boundary;

  WitnessRecord rec;
  rec.k = 1;
  rec.n = n;
  rec.values = {{"period_residual", period_residual},
                {"proximity", proximity},
                {"tail_bound", tail_bound},
                {"forward_terms", static_cast<double>(lf)},
                {"backward_terms", static_cast<double>(lb)},
                {"boundary_identity", boundary_exact ? 1.0 : 0.0}};
  if (sys.mode() == scalar_mode::exact) {
    if (const auto exact = exact_gp_norm(defect)) rec.exact["period_residual"] = exact->text();
  }
  rec.summarize(series);
  int l = 1;
  for (double v : fwd_norms) rec.values.emplace_back("forward_term_" + std::to_string(l++), v);
  l = 1;
  for (double v : bwd_norms) rec.values.emplace_back("backward_term_" + std::to_string(l++), v);
  run.records.push_back(std::move(rec));
  const bool identity_ok = sys.mode() != scalar_mode::exact || boundary_exact;
  run.verdict = (identity_ok && period_residual <= 2.0 * tail_bound) ? Verdict::pass : Verdict::fail;
  return run;
}

/// V_k = P_m F + 2 T^{n_k}(P_E G) + 2 T^{-n_k}(P_R G) for one split entry;
/// logs ||V_k - F||, ||C^(n_k)(V_k) - G|| and the six vanishing terms the
/// construction rests on.
inline WitnessRecord cosine_witness(const ElementarySystem& sys, const FiniteRankOperator& f,
                                    const FiniteRankOperator& g, const SplitWitness& split,
                                    std::size_t k_index) {
  if (k_index >= split.per_k.size()) throw precondition_error("cosine_witness: split entry out of range");
  const auto& entry = split.per_k[k_index];
  for (Index j : entry.e) {
    if (entry.r.contains(j)) throw precondition_error("cosine_witness: split parts overlap");
  }
  if (static_cast<Index>(entry.e.size() + entry.r.size()) != split.m) {
    throw precondition_error("cosine_witness: split parts do not cover the block");
  }
  detail::require_support(f, split.m, "cosine_witness F");
  detail::require_support(g, split.m, "cosine_witness G");
  const SubspaceSpec lm = SubspaceSpec::leading(split.m);
  const Scalar one = Scalar::one(sys.mode());
  const Scalar two = one + one;
  const std::int64_t n = entry.n;

  const FiniteRankOperator pf = project_rows(f, lm);
  const FiniteRankOperator eg = project_rows(g, entry.e);
  const FiniteRankOperator rg = project_rows(g, entry.r);
  const FiniteRankOperator vk =
      combine(pf, combine(t_apply(sys, n, eg), t_apply(sys, -n, rg), two, two), one, one);

  WitnessRecord rec;
  rec.k = entry.k;
  rec.n = n;
  rec.values = {{"residual1", distance(vk, f, NormKind::op)},
                {"residual2", distance(cosine_apply(sys, n, vk), g, NormKind::op)},
                {"term_t_pkf", operator_norm(t_apply(sys, n, pf))},
                {"term_s_pkf", operator_norm(t_apply(sys, -n, pf))},
                {"term_t_eg", operator_norm(t_apply(sys, n, eg))},
                {"term_s_rg", operator_norm(t_apply(sys, -n, rg))},
                {"term_t2_eg", operator_norm(t_apply(sys, 2 * n, eg))},
                {"term_s2_rg", operator_norm(t_apply(sys, -2 * n, rg))}};
  rec.summarize(vk);
  return rec;
}

/// Sweep of cosine_witness over every split entry.
inline WitnessRun cosine_witness_run(const ElementarySystem& sys, const FiniteRankOperator& f,
                                     const FiniteRankOperator& g, const SplitWitness& split,
                                     double tol = 1e-4) {
  WitnessRun run;
  run.kind = "cosine";
  run.parameters["m"] = std::to_string(split.m);
  run.parameters["tol"] = std::to_string(tol);
  for (std::size_t i = 0; i < split.per_k.size(); ++i) {
    run.records.push_back(cosine_witness(sys, f, g, split, i));
  }
  if (run.records.empty()) {
    run.verdict = Verdict::inconclusive;
    return run;
  }
  const auto& last = run.records.back();
  run.verdict = (last.value("residual1") <= tol && last.value("residual2") <= tol) ? Verdict::pass
                                                                                   : Verdict::fail;
  return run;
}

/// Trace-side witness F_k = P_m G1 + 2 T~^{n_k}(P_E G2) + 2 T~^{-n_k}(P_R G2)
/// where T~ is the trace-side map of the conjugate system (U, W*): the
/// bounding quantities are then the left compressions ||P (W*)^n||, equal to
/// the right compressions ||W^n P|| that the split was searched with.
/// Residuals are measured in the trace norm.
inline WitnessRecord adjoint_cosine_witness(const ElementarySystem& sys, const FiniteRankOperator& g1,
                                            const FiniteRankOperator& g2, const SplitWitness& split,
                                            std::size_t k_index) {
  if (k_index >= split.per_k.size()) {
    throw precondition_error("adjoint_cosine_witness: split entry out of range");
  }
  const auto& entry = split.per_k[k_index];
  if (static_cast<Index>(entry.e.size() + entry.r.size()) != split.m) {
    throw precondition_error("adjoint_cosine_witness: split parts do not cover the block");
  }
  detail::require_support(g1, split.m, "adjoint_cosine_witness G1");
  detail::require_support(g2, split.m, "adjoint_cosine_witness G2");
  const ElementarySystem conj = sys.conjugate();
  const SubspaceSpec lm = SubspaceSpec::leading(split.m);
  const Scalar one = Scalar::one(sys.mode());
  const Scalar two = one + one;
  const Scalar half = two.inverse();
  const std::int64_t n = entry.n;

  const FiniteRankOperator pg1 = project_rows(g1, lm);
  const FiniteRankOperator eg2 = project_rows(g2, entry.e);
  const FiniteRankOperator rg2 = project_rows(g2, entry.r);
  const FiniteRankOperator fk = combine(
      pg1, combine(adjoint_t_apply(conj, n, eg2), adjoint_t_apply(conj, -n, rg2), two, two), one, one);
  const FiniteRankOperator cosine_fk =
      combine(adjoint_t_apply(conj, n, fk), adjoint_t_apply(conj, -n, fk), half, half);

  const double t1g1 = trace_norm(g1);
  const double t1g2 = trace_norm(g2);
  const double right_f = sys.w().norm_power_proj(n, lm).to_double_clamped();
  const double right_b = sys.w().norm_power_proj(-n, lm).to_double_clamped();

  WitnessRecord rec;
  rec.k = entry.k;
  rec.n = n;
  rec.values = {{"residual1", distance(fk, g1, NormKind::trace)},
                {"residual2", distance(cosine_fk, g2, NormKind::trace)},
                {"bound_residual1", 2.0 * t1g2 * (right_f + right_b)},
                {"term_t_pg1", trace_norm(adjoint_t_apply(conj, n, pg1))},
                {"term_s_pg1", trace_norm(adjoint_t_apply(conj, -n, pg1))},
                {"term_t2_eg2", trace_norm(adjoint_t_apply(conj, 2 * n, eg2))},
                {"term_s2_rg2", trace_norm(adjoint_t_apply(conj, -2 * n, rg2))},
                {"bound_scale_g1", t1g1 * right_f}};
  rec.summarize(fk);
  return rec;
}

/// Sweep of adjoint_cosine_witness over every split entry.
inline WitnessRun adjoint_cosine_witness_run(const ElementarySystem& sys, const FiniteRankOperator& g1,
                                             const FiniteRankOperator& g2, const SplitWitness& split,
                                             double tol = 1e-4) {
  WitnessRun run;
  run.kind = "adjoint_cosine";
  run.parameters["m"] = std::to_string(split.m);
  run.parameters["tol"] = std::to_string(tol);
  run.notes.push_back("trace-side maps are realized on the conjugate system (U, W*)");
  for (std::size_t i = 0; i < split.per_k.size(); ++i) {
    run.records.push_back(adjoint_cosine_witness(sys, g1, g2, split, i));
  }
  if (run.records.empty()) {
    run.verdict = Verdict::inconclusive;
    return run;
  }
  const auto& last = run.records.back();
  run.verdict = (last.value("residual1") <= tol && last.value("residual2") <= tol) ? Verdict::pass
                                                                                   : Verdict::fail;
  return run;
}

struct ApproachRow {
  std::size_t target = 0;
  std::int64_t best_n = 0;
  double best_distance = 0.0;
};

/// Minimal operator-norm distance from the forward orbit {T^n(start)} to each
/// target, over n = 0..horizon.
inline std::vector<ApproachRow> orbit_approach(const ElementarySystem& sys,
                                               const FiniteRankOperator& start,
                                               const std::vector<FiniteRankOperator>& targets,
                                               std::int64_t horizon) {
  if (horizon < 0 || horizon > sys.w().orbit_horizon()) {
    throw configuration_error("orbit_approach horizon exceeds the configured cap");
  }
  std::vector<ApproachRow> rows(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) rows[t] = {t, 0, 0.0};
  FiniteRankOperator x = start;
  for (std::int64_t n = 0; n <= horizon; ++n) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const double d = distance(x, targets[t], NormKind::op);
      if (n == 0 || d < rows[t].best_distance) {
        rows[t].best_n = n;
        rows[t].best_distance = d;
      }
    }
    if (n < horizon) x = t_apply(sys, 1, x);
  }
  return rows;
}

}  // namespace elop

#endif  // ELOP_WITNESSES_HPP
