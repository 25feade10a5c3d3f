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

#ifndef ELOP_ELEMENTARY_HPP
#define ELOP_ELEMENTARY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elop/errors.hpp"
#include "elop/finite_rank.hpp"
#include "elop/weighted_operator.hpp"

namespace elop {

enum class OrbitDirection { forward, backward, cosine };

/// The pair (U, W) driving the sandwich map F -> W F U and everything built
/// from it.  U must be unitary and W invertible; both are validated here so
/// the dynamical maps below have no error paths of their own.
class ElementarySystem {
 public:
  ElementarySystem(WeightedPermutationOperator u, WeightedPermutationOperator w,
                   std::size_t support_cap = 100000)
      : u_(std::move(u)), w_(std::move(w)), support_cap_(support_cap) {
    if (u_.mode() != w_.mode()) throw configuration_error("system operators have different scalar modes");
    if (!u_.is_unitary()) throw domain_error("system operator U must be unitary");
    if (!w_.is_invertible()) throw domain_error("system operator W must be invertible");
  }

  const WeightedPermutationOperator& u() const { return u_; }
  const WeightedPermutationOperator& w() const { return w_; }
  scalar_mode mode() const { return w_.mode(); }
  std::size_t support_cap() const { return support_cap_; }

  /// System with W replaced by W*, driving the trace-side dynamics.
  ElementarySystem conjugate() const { return ElementarySystem(u_, w_.adjoint(), support_cap_); }

 private:
  WeightedPermutationOperator u_;
  WeightedPermutationOperator w_;
  std::size_t support_cap_;
};

namespace detail {

/// A^n F B^n on the sparse coefficients.  An entry c at (i, j) moves to
/// (sigma_A^n(i), tau_B^{-n}(j)) and picks up weight(A^n e_i) times the
/// weight of B^n on the column it came from, which is the inverse of the
/// weight of B^{-n} e_j.
inline FiniteRankOperator sandwich(const WeightedPermutationOperator& a,
                                   const WeightedPermutationOperator& b, std::int64_t n,
                                   const FiniteRankOperator& f, std::size_t support_cap) {
  if (a.mode() != f.mode() || b.mode() != f.mode()) {
    throw configuration_error("sandwich: operator and operand modes differ");
  }
  if (f.entry_count() > support_cap) {
    throw configuration_error("sandwich: operand support exceeds the cap of " + std::to_string(support_cap));
  }
  if (n == 0) return f;
  FiniteRankOperator out(f.mode());
  for (const auto& [ij, c] : f.entries()) {
    const OrbitStep row = a.apply_power(n, ij.first);
    const OrbitStep col = b.apply_power(-n, ij.second);
    out.set(row.index, col.index, row.weight * col.weight.inverse() * c);
  }
  return out;
}

}  // namespace detail

/// T^n(F) = W^n F U^n; negative n yields S^{|n|} = T^{-|n|}.
inline FiniteRankOperator t_apply(const ElementarySystem& sys, std::int64_t n,
                                  const FiniteRankOperator& f) {
  return detail::sandwich(sys.w(), sys.u(), n, f, sys.support_cap());
}

/// C^(n)(F) = (T^n(F) + T^{-n}(F)) / 2.
inline FiniteRankOperator cosine_apply(const ElementarySystem& sys, std::int64_t n,
                                       const FiniteRankOperator& f) {
  if (n < 0) throw precondition_error("cosine power must be non-negative");
  if (n == 0) return f;
  const Scalar half = sys.mode() == scalar_mode::exact
                          ? Scalar::exact(Dyadic::from_parts(1, -1))
                          : Scalar::real(0.5);
  return combine(t_apply(sys, n, f), t_apply(sys, -n, f), half, half);
}

/// Trace-side map: U^n G W^n for n >= 0 and U^{-|n|} G W^{-|n|} for n < 0.
inline FiniteRankOperator adjoint_t_apply(const ElementarySystem& sys, std::int64_t n,
                                          const FiniteRankOperator& g) {
  return detail::sandwich(sys.u(), sys.w(), n, g, sys.support_cap());
}

struct OrbitPoint {
  std::int64_t n;
  double norm;
  std::optional<Scalar> exact;  // dyadic norm when the step is a generalized permutation
};

/// Norms of the orbit of F under the selected map for n = 0..horizon.
inline std::vector<OrbitPoint> orbit_profile(const ElementarySystem& sys, const FiniteRankOperator& f,
                                             std::int64_t horizon, NormKind which,
                                             OrbitDirection direction) {
  if (horizon < 0) throw configuration_error("orbit horizon must be non-negative");
  if (horizon > sys.w().orbit_horizon()) {
    throw configuration_error("orbit horizon exceeds the operator cap");
  }
  std::vector<OrbitPoint> out;
  out.reserve(static_cast<std::size_t>(horizon) + 1);
  FiniteRankOperator fwd = f;
  FiniteRankOperator bwd = f;
  for (std::int64_t n = 0; n <= horizon; ++n) {
    FiniteRankOperator step(sys.mode());
    if (direction == OrbitDirection::forward) {
      step = fwd;
    } else if (direction == OrbitDirection::backward) {
      step = bwd;
    } else {
      step = cosine_apply(sys, n, f);
    }
    OrbitPoint p{n, norm(step, which), std::nullopt};
    if (step.mode() == scalar_mode::exact) {
      p.exact = which == NormKind::op ? exact_gp_norm(step) : exact_gp_trace_norm(step);
    }
    out.push_back(std::move(p));
    if (n < horizon) {
      fwd = t_apply(sys, 1, fwd);
      bwd = t_apply(sys, -1, bwd);
    }
  }
  return out;
}

}  // namespace elop

#endif  // ELOP_ELEMENTARY_HPP
