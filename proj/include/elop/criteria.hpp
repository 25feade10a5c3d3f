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

#ifndef ELOP_CRITERIA_HPP
#define ELOP_CRITERIA_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elop/errors.hpp"
#include "elop/subspace.hpp"
#include "elop/weighted_operator.hpp"

namespace elop {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

struct DecayRow {
  int k;                 // 1-based position in the schedule
  std::int64_t n;        // the power the quantity was evaluated at
  std::string quantity;  // e.g. "forward_norm"
  Scalar value;
};

/// Structured verdict of one criterion check: every tracked quantity, the
/// schedule, optional witness data, and free-form notes.
struct CriterionReport {
  std::string id;
  std::string family;  // descriptive label of the condition family
  std::map<std::string, std::string> parameters;
  std::vector<DecayRow> decay;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;
};

/// Decaying split of {1..m} into a forward part E_k and a backward part R_k.
struct SplitWitness {
  struct Entry {
    int k;
    std::int64_t n;
    SubspaceSpec e;
    SubspaceSpec r;
    Scalar forward_norm;   // ||W^{2n} P_E||
    Scalar backward_norm;  // ||W^{-2n} P_R||
  };
  Index m = 0;
  std::vector<Entry> per_k;
  Verdict verdict = Verdict::inconclusive;
};

struct DecayOptions {
  double threshold = 1e-6;
  int window = 3;     // trailing entries that must be non-increasing
  double slack = 0.0; // comparison tolerance; stays 0 in exact mode
};

/// Geometric-tail certification: after `run` consecutive term ratios at or
/// below `ratio`, the remaining tail is bounded by last_term*ratio/(1-ratio).
struct TailPolicy {
  double ratio = 0.5;
  int run = 2;
  int max_terms = 64;

  void validate() const {
    if (!(ratio > 0.0) || ratio >= 1.0) throw configuration_error("tail ratio must lie in (0, 1)");
    if (run < 1) throw configuration_error("tail run length must be >= 1");
    if (max_terms < run + 1) throw configuration_error("tail max_terms too small for the run length");
  }
};

namespace detail {

inline std::string schedule_text(const std::vector<std::int64_t>& schedule) {
  std::string out = "{";
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(schedule[i]);
  }
  return out + "}";
}

inline void require_schedule(const std::vector<std::int64_t>& schedule) {
  if (schedule.empty()) throw configuration_error("schedule must be non-empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1) throw configuration_error("schedule entries must be positive");
    if (i > 0 && schedule[i] <= schedule[i - 1]) {
      throw configuration_error("schedule must be strictly increasing");
    }
  }
}

/// A tracked quantity decays when its final value is at or below the
/// threshold and its trailing `window` entries are non-increasing (within the
/// configured slack when comparisons are floating).
inline bool decays(const std::vector<Scalar>& series, const DecayOptions& opts) {
  if (series.empty()) return false;
  if (!(series.back().to_double_clamped() <= opts.threshold)) return false;
  const std::size_t window = std::min<std::size_t>(static_cast<std::size_t>(opts.window), series.size());
  for (std::size_t i = series.size() - window; i + 1 < series.size(); ++i) {
    if (opts.slack > 0.0) {
      if (series[i].to_double_clamped() + opts.slack < series[i + 1].to_double_clamped()) return false;
    } else if (Scalar::compare(series[i], series[i + 1]) < 0) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Smallest N with sigma^n({1..k}) disjoint from {1..k} for every n in
/// [N, limit]; the sweep is exhaustive over [1, limit].  Returns nullopt when
/// no such N survives the sweep.
inline std::optional<std::int64_t> orthogonality_horizon(const WeightedPermutationOperator& u,
                                                         Index k, std::int64_t limit) {
  if (limit < 1) throw configuration_error("orthogonality sweep limit must be >= 1");
  if (k < 1) throw configuration_error("orthogonality subspace size must be >= 1");
  std::set<Index> image;
  for (Index j = 1; j <= k; ++j) image.insert(j);
  std::int64_t last_hit = 0;
  for (std::int64_t n = 1; n <= limit; ++n) {
    std::set<Index> next;
    for (Index j : image) next.insert(u.rule().forward(j));
    image = std::move(next);
    bool disjoint = true;
    for (Index j : image) {
      if (j <= k) {
        disjoint = false;
        break;
      }
    }
    if (!disjoint) last_hit = n;
  }
  if (last_hit >= limit) return std::nullopt;
  return last_hit + 1;
}

/// Two-sided compression decay ||W^{n_k} P_m|| and ||W^{-n_k} P_m|| along one
/// schedule, with the canonical choice G_k = D_k = P_m.
inline CriterionReport check_hypercyclicity_condition(const WeightedPermutationOperator& w, Index m,
                                                      const std::vector<std::int64_t>& schedule,
                                                      const DecayOptions& opts = {}) {
  detail::require_schedule(schedule);
  if (!w.is_invertible()) throw domain_error("checker requires an invertible operator");
  CriterionReport rep;
  rep.id = "transitive_decay";
  rep.family = "sufficient condition: two-sided compression-norm decay";
  rep.parameters["m"] = std::to_string(m);
  rep.parameters["schedule"] = detail::schedule_text(schedule);
  rep.parameters["threshold"] = std::to_string(opts.threshold);
  const SubspaceSpec lm = SubspaceSpec::leading(m);
  std::vector<Scalar> fwd, bwd;
  int k = 1;
  for (std::int64_t n : schedule) {
    fwd.push_back(w.norm_power_proj(n, lm));
    bwd.push_back(w.norm_power_proj(-n, lm));
    rep.decay.push_back({k, n, "forward_norm", fwd.back()});
    rep.decay.push_back({k, n, "backward_norm", bwd.back()});
    ++k;
  }
  rep.verdict = (detail::decays(fwd, opts) && detail::decays(bwd, opts)) ? Verdict::pass : Verdict::fail;
  return rep;
}

/// Zero-anchored transitivity: independent forward and backward schedules on
/// the compressions of an arbitrary finite subspace K.
inline CriterionReport check_zero_transitivity(const WeightedPermutationOperator& w,
                                               const SubspaceSpec& k_space,
                                               const std::vector<std::int64_t>& forward_schedule,
                                               const std::vector<std::int64_t>& backward_schedule,
                                               const DecayOptions& opts = {}) {
  detail::require_schedule(forward_schedule);
  detail::require_schedule(backward_schedule);
  if (k_space.empty()) throw configuration_error("subspace K must be non-empty");
  if (!w.is_invertible()) throw domain_error("checker requires an invertible operator");
  CriterionReport rep;
  rep.id = "zero_transitive";
  rep.family = "two-sided open-set condition anchored at the zero operator";
  rep.parameters["K"] = k_space.to_text();
  rep.parameters["schedule_forward"] = detail::schedule_text(forward_schedule);
  rep.parameters["schedule_backward"] = detail::schedule_text(backward_schedule);
  rep.parameters["threshold"] = std::to_string(opts.threshold);
  std::vector<Scalar> fwd, bwd;
  for (std::size_t i = 0; i < forward_schedule.size(); ++i) {
    fwd.push_back(w.norm_power_proj(forward_schedule[i], k_space));
    rep.decay.push_back({static_cast<int>(i) + 1, forward_schedule[i], "forward_norm", fwd.back()});
  }
  for (std::size_t i = 0; i < backward_schedule.size(); ++i) {
    bwd.push_back(w.norm_power_proj(-backward_schedule[i], k_space));
    rep.decay.push_back({static_cast<int>(i) + 1, backward_schedule[i], "backward_norm", bwd.back()});
  }
  rep.verdict = (detail::decays(fwd, opts) && detail::decays(bwd, opts)) ? Verdict::pass : Verdict::fail;
  return rep;
}

/// Necessary condition m(W) < 1 < ||W||, decided by exact comparison of the
/// declared weight bounds.  When a schedule is supplied the report also
/// tracks the two inequivalent small-modulus quantities m(W^{-n_k}) and
/// m(W^{-1})^{n_k}; they agree for the built-in operators but differ in
/// general, so both are reported rather than either being chosen.
inline CriterionReport check_necessary_m_condition(const WeightedPermutationOperator& w,
                                                   const std::vector<std::int64_t>& schedule = {}) {
  CriterionReport rep;
  rep.id = "necessary_modulus";
  rep.family = "necessary condition: minimum modulus below 1, norm above 1";
  const Scalar mw = w.min_modulus();
  const Scalar nw = w.sup_norm();
  const Scalar one = Scalar::one(w.mode());
  rep.parameters["min_modulus"] = mw.text();
  rep.parameters["sup_norm"] = nw.text();
  rep.verdict = (mw < one && one < nw) ? Verdict::pass : Verdict::fail;
  if (!schedule.empty()) {
    detail::require_schedule(schedule);
    rep.parameters["schedule"] = detail::schedule_text(schedule);
    if (!w.is_invertible()) throw domain_error("decay diagnostics require an invertible operator");
    const Scalar minv = w.inverse().min_modulus();
    int k = 1;
    for (std::int64_t n : schedule) {
      rep.decay.push_back({k, n, "min_modulus_power", w.min_modulus_power(-n)});
      Scalar pw = Scalar::one(w.mode());
      for (std::int64_t i = 0; i < n; ++i) pw = pw * minv;
      rep.decay.push_back({k, n, "min_modulus_base_power", pw});
      ++k;
    }
    rep.notes.push_back(
        "min_modulus_power probes m(W^-n) directly; min_modulus_base_power is m(W^-1)^n. "
        "They differ in general and are reported side by side.");
  }
  return rep;
}

/// Series condition: for each k both series sum_l ||W^{±l n_k} P_m|| must be
/// finite with certified geometric tails, and the certified totals must decay
/// along the schedule.
inline CriterionReport check_series_condition(const WeightedPermutationOperator& w, Index m,
                                              const std::vector<std::int64_t>& schedule,
                                              const TailPolicy& tail = {},
                                              const DecayOptions& opts = {}) {
  detail::require_schedule(schedule);
  tail.validate();
  if (!w.is_invertible()) throw domain_error("checker requires an invertible operator");
  CriterionReport rep;
  rep.id = "periodic_series";
  rep.family = "sufficient condition for dense periodicity: summable compression norms";
  rep.parameters["m"] = std::to_string(m);
  rep.parameters["schedule"] = detail::schedule_text(schedule);
  rep.parameters["threshold"] = std::to_string(opts.threshold);
  rep.parameters["tail_ratio"] = std::to_string(tail.ratio);
  rep.parameters["tail_run"] = std::to_string(tail.run);
  const SubspaceSpec lm = SubspaceSpec::leading(m);
  bool certified_everywhere = true;
  std::vector<Scalar> fwd_totals, bwd_totals;
  int k = 1;
  for (std::int64_t n : schedule) {
    for (int direction = 0; direction < 2; ++direction) {
      const std::int64_t sign = direction == 0 ? 1 : -1;
      const char* label = direction == 0 ? "forward" : "backward";
      double partial = 0.0;
      double prev = -1.0;
      int run = 0;
      std::optional<double> tail_bound;
      int terms = 0;
      for (int l = 1; l <= tail.max_terms; ++l) {
        const double term = w.norm_power_proj(sign * l * n, lm).to_double_clamped();
        partial += term;
        ++terms;
        if (prev >= 0.0) {
          if ((prev > 0.0 && term <= tail.ratio * prev) || (prev == 0.0 && term == 0.0)) {
            ++run;
          } else {
            run = 0;
          }
        }
        prev = term;
        if (run >= tail.run) {
          tail_bound = term * tail.ratio / (1.0 - tail.ratio);
          break;
        }
      }
      if (!tail_bound) {
        certified_everywhere = false;
        rep.notes.push_back(std::string(label) + " series at k=" + std::to_string(k) +
                            " never certified a geometric tail");
        continue;
      }
      const Scalar total = Scalar::real(partial + *tail_bound);
      (direction == 0 ? fwd_totals : bwd_totals).push_back(total);
      rep.decay.push_back({k, n, std::string(label) + "_partial_sum", Scalar::real(partial)});
      rep.decay.push_back({k, n, std::string(label) + "_tail_bound", Scalar::real(*tail_bound)});
      rep.decay.push_back({k, n, std::string(label) + "_total", total});
      rep.decay.push_back({k, n, std::string(label) + "_terms", Scalar::real(terms)});
    }
    ++k;
  }
  if (!certified_everywhere) {
    rep.verdict = Verdict::inconclusive;
  } else {
    DecayOptions float_opts = opts;
    rep.verdict = (detail::decays(fwd_totals, float_opts) && detail::decays(bwd_totals, float_opts))
                      ? Verdict::pass
                      : Verdict::fail;
  }
  return rep;
}

/// Greedy split of {1..m}: column j joins E_k when its forward weight at
/// power 2n_k is no larger than its backward weight, else R_k.  The witness
/// verdict is pass when both split norms decay, inconclusive otherwise (the
/// greedy choice is per-column optimal, so no other split decays either).
inline SplitWitness find_cosine_split(const WeightedPermutationOperator& w, Index m,
                                      const std::vector<std::int64_t>& schedule,
                                      const DecayOptions& opts = {}) {
  detail::require_schedule(schedule);
  if (!w.is_invertible()) throw domain_error("split search requires an invertible operator");
  if (m < 1) throw configuration_error("split search needs m >= 1");
  SplitWitness split;
  split.m = m;
  std::vector<Scalar> fwd, bwd;
  bool degenerate = false;
  int k = 1;
  for (std::int64_t n : schedule) {
    std::vector<Index> e_idx, r_idx;
    for (Index j = 1; j <= m; ++j) {
      const Scalar wf = w.apply_power(2 * n, j).weight.abs();
      const Scalar wb = w.apply_power(-2 * n, j).weight.abs();
      (wf <= wb ? e_idx : r_idx).push_back(j);
    }
    SplitWitness::Entry entry;
    entry.k = k;
    entry.n = n;
    entry.e = SubspaceSpec(std::move(e_idx));
    entry.r = SubspaceSpec(std::move(r_idx));
    // An empty part is not a projection target; a one-sided assignment means
    // the operator decays in at most one direction and no split witnesses it.
    degenerate = degenerate || entry.e.empty() || entry.r.empty();
    entry.forward_norm = w.norm_power_proj(2 * n, entry.e);
    entry.backward_norm = w.norm_power_proj(-2 * n, entry.r);
    fwd.push_back(entry.forward_norm);
    bwd.push_back(entry.backward_norm);
    split.per_k.push_back(std::move(entry));
    ++k;
  }
  split.verdict = (!degenerate && detail::decays(fwd, opts) && detail::decays(bwd, opts))
                      ? Verdict::pass
                      : Verdict::inconclusive;
  return split;
}

enum class DualVariant { plain, with_split };

/// Conditions for the trace-side dynamics, evaluated on the adjoint W*: the
/// left compressions ||P_m (W*)^{±n_k}||, and for the split variant a per-row
/// greedy split of the doubled-power left compressions.
inline CriterionReport check_adjoint_conditions(const WeightedPermutationOperator& w, Index m,
                                                const std::vector<std::int64_t>& schedule,
                                                DualVariant variant, const DecayOptions& opts = {}) {
  detail::require_schedule(schedule);
  if (!w.is_invertible()) throw domain_error("checker requires an invertible operator");
  const WeightedPermutationOperator a = w.adjoint();
  CriterionReport rep;
  rep.id = variant == DualVariant::with_split ? "dual_split" : "dual_plain";
  rep.family = variant == DualVariant::with_split
                   ? "trace-dual transitivity: left compression decay with split"
                   : "trace-dual transitivity: left compression decay";
  rep.parameters["m"] = std::to_string(m);
  rep.parameters["schedule"] = detail::schedule_text(schedule);
  rep.parameters["threshold"] = std::to_string(opts.threshold);
  const SubspaceSpec lm = SubspaceSpec::leading(m);
  std::vector<Scalar> fwd, bwd, sfwd, sbwd;
  int k = 1;
  for (std::int64_t n : schedule) {
    fwd.push_back(a.proj_norm_power(lm, n));
    bwd.push_back(a.proj_norm_power(lm, -n));
    rep.decay.push_back({k, n, "left_forward_norm", fwd.back()});
    rep.decay.push_back({k, n, "left_backward_norm", bwd.back()});
    if (variant == DualVariant::with_split) {
      std::vector<Index> e_idx, r_idx;
      for (Index i = 1; i <= m; ++i) {
        const Index jf = a.preimage_index(2 * n, i);
        const Scalar lf = a.apply_power(2 * n, jf).weight.abs();
        const Index jb = a.preimage_index(-2 * n, i);
        const Scalar lb = a.apply_power(-2 * n, jb).weight.abs();
        (lf <= lb ? e_idx : r_idx).push_back(i);
      }
      const SubspaceSpec e(std::move(e_idx)), r(std::move(r_idx));
      sfwd.push_back(a.proj_norm_power(e, 2 * n));
      sbwd.push_back(a.proj_norm_power(r, -2 * n));
      rep.decay.push_back({k, 2 * n, "left_split_forward_norm", sfwd.back()});
      rep.decay.push_back({k, 2 * n, "left_split_backward_norm", sbwd.back()});
      if (k == static_cast<int>(schedule.size())) {
        rep.parameters["final_split_e"] = e.to_text();
        rep.parameters["final_split_r"] = r.to_text();
      }
    }
    ++k;
  }
  bool ok = detail::decays(fwd, opts) && detail::decays(bwd, opts);
  if (variant == DualVariant::with_split) {
    ok = ok && detail::decays(sfwd, opts) && detail::decays(sbwd, opts);
  } else {
    rep.notes.push_back(
        "auxiliary clauses of this condition are underspecified; the checker evaluates the two "
        "displayed limits, and the strong-limit clause holds trivially for the canonical constant "
        "sequences G_k = D_k = P_m.");
  }
  rep.verdict = ok ? Verdict::pass : Verdict::fail;
  return rep;
}

}  // namespace elop

#endif  // ELOP_CRITERIA_HPP
