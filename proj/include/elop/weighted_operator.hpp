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

#ifndef ELOP_WEIGHTED_OPERATOR_HPP
#define ELOP_WEIGHTED_OPERATOR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elop/errors.hpp"
#include "elop/permutation.hpp"
#include "elop/scalar.hpp"
#include "elop/subspace.hpp"

namespace elop {

/// Value of A^n e_j for a weighted permutation operator: a basis index and
/// the accumulated weight.
struct OrbitStep {
  Index index;
  Scalar weight;
};

/// Column weights declared as one value per residue class modulo a fixed
/// modulus, plus a finite exception table.  This pattern makes inf|w| and
/// sup|w| over all columns finitely computable: each residue weight is
/// attained at infinitely many columns regardless of the exceptions.
struct WeightRule {
  Index modulus = 1;
  std::vector<Scalar> residue;          // residue[r] is the weight of columns j with j % modulus == r
  std::map<Index, Scalar> exceptions;   // per-column overrides

  static WeightRule unit(scalar_mode mode) {
    WeightRule r;
    r.residue = {Scalar::one(mode)};
    return r;
  }

  static WeightRule constant(const Scalar& w) {
    WeightRule r;
    r.residue = {w};
    return r;
  }

  scalar_mode mode() const {
    if (residue.empty()) throw configuration_error("weight rule has no residue weights");
    return residue.front().mode();
  }

  void validate() const {
    if (modulus < 1) throw configuration_error("weight modulus must be >= 1");
    if (static_cast<Index>(residue.size()) != modulus) {
      throw configuration_error("weight rule needs exactly one weight per residue class");
    }
    const scalar_mode m = mode();
    for (const Scalar& w : residue) {
      if (w.mode() != m) throw configuration_error("weight rule mixes scalar modes");
      if (w.is_zero()) throw configuration_error("weights must be nonzero");
    }
    for (const auto& [j, w] : exceptions) {
      checked_index(j, "weight exception");
      if (w.mode() != m) throw configuration_error("weight rule mixes scalar modes");
      if (w.is_zero()) throw configuration_error("weights must be nonzero");
    }
  }

  Scalar weight(Index j) const {
    auto it = exceptions.find(j);
    if (it != exceptions.end()) return it->second;
    return residue[static_cast<std::size_t>(j % modulus)];
  }

  Scalar inf_abs() const {
    Scalar m = residue.front().abs();
    for (const Scalar& w : residue) m = min(m, w.abs());
    for (const auto& [j, w] : exceptions) m = min(m, w.abs());
    return m;
  }

  Scalar sup_abs() const {
    Scalar m = residue.front().abs();
    for (const Scalar& w : residue) m = max(m, w.abs());
    for (const auto& [j, w] : exceptions) m = max(m, w.abs());
    return m;
  }

  bool unit_modulus() const {
    const Scalar one = Scalar::one(mode());
    for (const Scalar& w : residue)
      if (w.abs() != one) return false;
    for (const auto& [j, w] : exceptions)
      if (w.abs() != one) return false;
    return true;
  }
};

/// Lazy infinite operator A e_j = w_j e_{sigma(j)} for a bijection sigma of
/// the positive integers and nonzero weights w_j.  Powers are computed by
/// walking the orbit; walks are memoized per starting index up to a
/// configurable horizon.  The memo is mutex-guarded, so concurrent
/// apply_power calls on a shared operator are race-free.
class WeightedPermutationOperator {
 public:
  static constexpr std::int64_t kDefaultOrbitHorizon = std::int64_t{1} << 16;

  WeightedPermutationOperator(PermutationRule rule, WeightRule weights, std::string name)
      : rule_(std::move(rule)),
        name_(std::move(name)),
        pattern_(std::move(weights)),
        memo_(std::make_unique<MemoState>()) {
    pattern_->validate();
    mode_ = pattern_->mode();
    weight_fn_ = [p = *pattern_](Index j) { return p.weight(j); };
    inf_abs_ = pattern_->inf_abs();
    sup_abs_ = pattern_->sup_abs();
    unitary_ = pattern_->unit_modulus();
  }

  WeightedPermutationOperator(const WeightedPermutationOperator& other)
      : rule_(other.rule_),
        name_(other.name_),
        mode_(other.mode_),
        pattern_(other.pattern_),
        weight_fn_(other.weight_fn_),
        inf_abs_(other.inf_abs_),
        sup_abs_(other.sup_abs_),
        unitary_(other.unitary_),
        horizon_(other.horizon_),
        memo_(std::make_unique<MemoState>()) {}

  WeightedPermutationOperator& operator=(const WeightedPermutationOperator& other) {
    if (this != &other) *this = WeightedPermutationOperator(other);
    return *this;
  }
  WeightedPermutationOperator(WeightedPermutationOperator&&) = default;
  WeightedPermutationOperator& operator=(WeightedPermutationOperator&&) = default;

  const PermutationRule& rule() const { return rule_; }
  const std::string& name() const { return name_; }
  scalar_mode mode() const { return mode_; }
  const std::optional<WeightRule>& weight_pattern() const { return pattern_; }

  std::int64_t orbit_horizon() const { return horizon_; }
  void set_orbit_horizon(std::int64_t h) {
    if (h < 1) throw configuration_error("orbit horizon must be >= 1");
    horizon_ = h;
  }

  Scalar weight(Index j) const { return weight_fn_(checked_index(j, "weight")); }

  /// inf_j |w_j|, exact by the pattern declaration.
  Scalar min_modulus() const { return require_bounds().first; }
  /// sup_j |w_j| = operator norm.
  Scalar sup_norm() const { return require_bounds().second; }

  bool is_invertible() const { return !min_modulus().is_zero(); }
  bool is_unitary() const { return unitary_; }

  /// A e_j.
  OrbitStep apply(Index j) const { return apply_power(1, j); }

  /// A^n e_j; n = 0 gives (j, 1), n < 0 requires invertibility.
  OrbitStep apply_power(std::int64_t n, Index j) const {
    checked_index(j, "apply_power");
    if (n == 0) return {j, Scalar::one(mode_)};
    const std::int64_t steps = n > 0 ? n : -n;
    if (steps > horizon_) {
      throw configuration_error("apply_power: |n| exceeds the orbit horizon of " + std::to_string(horizon_));
    }
    if (n < 0 && !is_invertible()) {
      throw domain_error("negative power of a non-invertible operator");
    }
    std::scoped_lock lock(memo_->mu);
    auto& memo = memo_->orbits[j];
    auto& chain = n > 0 ? memo.forward : memo.backward;
    while (static_cast<std::int64_t>(chain.size()) < steps) {
      const Index at = chain.empty() ? j : chain.back().index;
      const Scalar acc = chain.empty() ? Scalar::one(mode_) : chain.back().weight;
      if (n > 0) {
        chain.push_back({rule_.forward(at), acc * weight_fn_(at)});
      } else {
        const Index prev = rule_.backward(at);
        chain.push_back({prev, acc * weight_fn_(prev).inverse()});
      }
    }
    return chain[static_cast<std::size_t>(steps - 1)];
  }

  /// sigma^{-n}(i) without touching weights; valid for non-invertible
  /// operators too (the backward permutation map is always total).
  Index preimage_index(std::int64_t n, Index i) const {
    checked_index(i, "preimage_index");
    const std::int64_t steps = n > 0 ? n : -n;
    if (steps > horizon_) {
      throw configuration_error("preimage_index: |n| exceeds the orbit horizon");
    }
    Index at = i;
    for (std::int64_t s = 0; s < steps; ++s) at = n > 0 ? rule_.backward(at) : rule_.forward(at);
    return at;
  }

  /// ||A^n P_s||: because distinct basis vectors map to distinct basis
  /// vectors, the columns of A^n P_s are pairwise orthogonal and the norm is
  /// the largest weight magnitude over s.  Empty s gives 0.
  Scalar norm_power_proj(std::int64_t n, const SubspaceSpec& s) const {
    Scalar best = Scalar::zero(mode_);
    for (Index j : s) best = max(best, apply_power(n, j).weight.abs());
    return best;
  }

  /// ||P_s A^n||: the rows of P_s A^n each hold at most one entry, namely the
  /// weight of A^n e_{sigma^{-n}(i)} arriving at row i in s.
  Scalar proj_norm_power(const SubspaceSpec& s, std::int64_t n) const {
    if (n == 0) return s.empty() ? Scalar::zero(mode_) : Scalar::one(mode_);
    Scalar best = Scalar::zero(mode_);
    for (Index i : s) {
      const Index j = preimage_index(n, i);
      best = max(best, apply_power(n, j).weight.abs());
    }
    return best;
  }

  /// Minimum of |weight of A^n e_j| over the probe window j in [1, probe].
  /// For the built-in rules the window (default 2|n| + 64) contains a
  /// representative of every orbit shape, so the probe minimum is the true
  /// infimum there.
  Scalar min_modulus_power(std::int64_t n, Index probe = 0) const {
    if (probe <= 0) probe = 2 * (n > 0 ? n : -n) + 64;
    if (n == 0) return Scalar::one(mode_);
    Scalar best = apply_power(n, 1).weight.abs();
    for (Index j = 2; j <= probe; ++j) best = min(best, apply_power(n, j).weight.abs());
    return best;
  }

  /// A^{-1} e_{sigma(j)} = w_j^{-1} e_j.  Exact mode requires all weights to
  /// be signed powers of two (the only exactly invertible dyadics).
  WeightedPermutationOperator inverse() const {
    if (!is_invertible()) throw domain_error("operator is not invertible: inf|w| = 0");
    WeightedPermutationOperator inv(*this);
    inv.rule_ = rule_.inverted();
    inv.name_ = name_.empty() ? "inverse" : name_ + "^-1";
    inv.pattern_.reset();
    inv.weight_fn_ = [rule = rule_, w = weight_fn_](Index i) { return w(rule.backward(i)).inverse(); };
    inv.inf_abs_ = sup_abs_.inverse();
    inv.sup_abs_ = inf_abs_.inverse();
    inv.memo_ = std::make_unique<MemoState>();
    return inv;
  }

  /// A* e_{sigma(j)} = w_j e_j (weights are real).  Unitary operators have
  /// adjoint == inverse.
  WeightedPermutationOperator adjoint() const {
    WeightedPermutationOperator adj(*this);
    adj.rule_ = rule_.inverted();
    adj.name_ = name_.empty() ? "adjoint" : name_ + "*";
    adj.pattern_.reset();
    adj.weight_fn_ = [rule = rule_, w = weight_fn_](Index i) { return w(rule.backward(i)); };
    adj.inf_abs_ = inf_abs_;
    adj.sup_abs_ = sup_abs_;
    adj.memo_ = std::make_unique<MemoState>();
    return adj;
  }

  /// Re-parseable description block (pattern-built operators only).
  std::string describe() const {
    std::string out = "permutation " + rule_.description() + "\n";
    if (!pattern_) return out + "weights derived\n";
    out += "weight_modulus " + std::to_string(pattern_->modulus) + "\n";
    for (Index r = 0; r < pattern_->modulus; ++r) {
      out += "weight " + std::to_string(r) + " " + pattern_->residue[static_cast<std::size_t>(r)].text() + "\n";
    }
    for (const auto& [j, w] : pattern_->exceptions) {
      out += "weight_at " + std::to_string(j) + " " + w.text() + "\n";
    }
    return out;
  }

 private:
  struct OrbitMemo {
    std::vector<OrbitStep> forward;   // entry t-1 holds A^t e_j
    std::vector<OrbitStep> backward;  // entry t-1 holds A^{-t} e_j
  };
  struct MemoState {
    std::mutex mu;
    std::map<Index, OrbitMemo> orbits;
  };

  std::pair<Scalar, Scalar> require_bounds() const {
    if (inf_abs_.mode() != mode_) throw configuration_error("weight bounds undeclared");
    return {inf_abs_, sup_abs_};
  }

  PermutationRule rule_;
  std::string name_;
  scalar_mode mode_;
  std::optional<WeightRule> pattern_;
  std::function<Scalar(Index)> weight_fn_;
  Scalar inf_abs_;
  Scalar sup_abs_;
  bool unitary_ = false;
  std::int64_t horizon_ = kDefaultOrbitHorizon;
  mutable std::unique_ptr<MemoState> memo_;
};

/// The invertible witness operator: 1/2 e_{j+2} on odd columns, 2 e_{j-2} on
/// even columns above 2, and e_1 on column 2.  Exactly ||W|| = 2, m(W) = 1/2.
inline WeightedPermutationOperator build_example_w(scalar_mode mode = scalar_mode::exact) {
  WeightRule w;
  w.modulus = 2;
  if (mode == scalar_mode::exact) {
    w.residue = {Scalar::exact(2), Scalar::exact(Dyadic::from_parts(1, -1))};
    w.exceptions[2] = Scalar::exact(1);
  } else {
    w.residue = {Scalar::real(2.0), Scalar::real(0.5)};
    w.exceptions[2] = Scalar::real(1.0);
  }
  return WeightedPermutationOperator(zigzag_predecessor_rule(), std::move(w), "W");
}

/// Unit-weight operator over the zigzag successor map: a unitary whose single
/// bi-infinite orbit makes every finite index set eventually disjoint from
/// its iterates.
inline WeightedPermutationOperator build_aperiodic_shift(scalar_mode mode = scalar_mode::exact) {
  return WeightedPermutationOperator(zigzag_successor_rule(), WeightRule::unit(mode), "U");
}

inline WeightedPermutationOperator identity_operator(scalar_mode mode = scalar_mode::exact) {
  return WeightedPermutationOperator(identity_rule(), WeightRule::unit(mode), "I");
}

/// Unit-weight block rotation with A^period == identity.
inline WeightedPermutationOperator build_cyclic_unitary(Index period,
                                                        scalar_mode mode = scalar_mode::exact) {
  return WeightedPermutationOperator(cyclic_blocks_rule(period), WeightRule::unit(mode),
                                     "C" + std::to_string(period));
}

}  // namespace elop

#endif  // ELOP_WEIGHTED_OPERATOR_HPP
