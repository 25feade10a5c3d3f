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

#ifndef ELOP_FINITE_RANK_HPP
#define ELOP_FINITE_RANK_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elop/dense_svd.hpp"
#include "elop/errors.hpp"
#include "elop/permutation.hpp"
#include "elop/scalar.hpp"
#include "elop/subspace.hpp"

namespace elop {

enum class NormKind { op, trace };

/// Sparse finite-rank operator F = sum c_ij <., e_j> e_i.  Zero coefficients
/// are never stored; all arithmetic stays in the operator's scalar mode.
class FiniteRankOperator {
 public:
  using EntryMap = std::map<std::pair<Index, Index>, Scalar>;

  explicit FiniteRankOperator(scalar_mode mode = scalar_mode::exact) : mode_(mode) {}

  static FiniteRankOperator zero(scalar_mode mode) { return FiniteRankOperator(mode); }

  scalar_mode mode() const { return mode_; }
  bool empty() const { return entries_.empty(); }
  std::size_t entry_count() const { return entries_.size(); }
  const EntryMap& entries() const { return entries_; }

  void set(Index i, Index j, const Scalar& v) {
    check(i, j, v);
    if (v.is_zero()) {
      entries_.erase({i, j});
    } else {
      entries_[{i, j}] = v;
    }
  }

  void accumulate(Index i, Index j, const Scalar& v) {
    check(i, j, v);
    auto it = entries_.find({i, j});
    if (it == entries_.end()) {
      if (!v.is_zero()) entries_.emplace(std::make_pair(i, j), v);
      return;
    }
    const Scalar s = it->second + v;
    if (s.is_zero()) {
      entries_.erase(it);
    } else {
      it->second = s;
    }
  }

  Scalar at(Index i, Index j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? Scalar::zero(mode_) : it->second;
  }

  SubspaceSpec row_support() const {
    std::set<Index> rows;
    for (const auto& [ij, v] : entries_) rows.insert(ij.first);
    return SubspaceSpec(std::vector<Index>(rows.begin(), rows.end()));
  }

  SubspaceSpec col_support() const {
    std::set<Index> cols;
    for (const auto& [ij, v] : entries_) cols.insert(ij.second);
    return SubspaceSpec(std::vector<Index>(cols.begin(), cols.end()));
  }

  bool supported_in(const SubspaceSpec& s) const {
    for (const auto& [ij, v] : entries_) {
      if (!s.contains(ij.first) || !s.contains(ij.second)) return false;
    }
    return true;
  }

  friend bool operator==(const FiniteRankOperator& a, const FiniteRankOperator& b) {
    if (a.mode_ != b.mode_ || a.entries_.size() != b.entries_.size()) return false;
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    for (; ia != a.entries_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second != ib->second) return false;
    }
    return true;
  }
  friend bool operator!=(const FiniteRankOperator& a, const FiniteRankOperator& b) { return !(a == b); }

 private:
  void check(Index i, Index j, const Scalar& v) const {
    checked_index(i, "finite-rank row");
    checked_index(j, "finite-rank column");
    if (v.mode() != mode_) throw configuration_error("entry mode does not match operator mode");
  }

  scalar_mode mode_;
  EntryMap entries_;
};

/// Orthogonal projection onto span{e_i : i in s}.
inline FiniteRankOperator projection_operator(const SubspaceSpec& s, scalar_mode mode = scalar_mode::exact) {
  if (s.empty()) throw precondition_error("projection target must be non-empty");
  FiniteRankOperator p(mode);
  for (Index i : s) p.set(i, i, Scalar::one(mode));
  return p;
}

inline FiniteRankOperator rank_one(Index i, Index j, const Scalar& c) {
  FiniteRankOperator f(c.mode());
  f.set(i, j, c);
  return f;
}

/// aF + bG.
inline FiniteRankOperator combine(const FiniteRankOperator& f, const FiniteRankOperator& g,
                                  const Scalar& a, const Scalar& b) {
  if (f.mode() != g.mode()) throw configuration_error("combine: operand modes differ");
  FiniteRankOperator out(f.mode());
  for (const auto& [ij, v] : f.entries()) out.accumulate(ij.first, ij.second, a * v);
  for (const auto& [ij, v] : g.entries()) out.accumulate(ij.first, ij.second, b * v);
  return out;
}

/// Matrix product FG on the sparse coefficients.
inline FiniteRankOperator compose(const FiniteRankOperator& f, const FiniteRankOperator& g) {
  if (f.mode() != g.mode()) throw configuration_error("compose: operand modes differ");
  std::map<Index, std::vector<std::pair<Index, Scalar>>> g_by_row;
  for (const auto& [ij, v] : g.entries()) g_by_row[ij.first].emplace_back(ij.second, v);
  FiniteRankOperator out(f.mode());
  for (const auto& [ik, fv] : f.entries()) {
    auto it = g_by_row.find(ik.second);
    if (it == g_by_row.end()) continue;
    for (const auto& [j, gv] : it->second) out.accumulate(ik.first, j, fv * gv);
  }
  return out;
}

/// P_s F: keep rows with index in s.
inline FiniteRankOperator project_rows(const FiniteRankOperator& f, const SubspaceSpec& s) {
  FiniteRankOperator out(f.mode());
  for (const auto& [ij, v] : f.entries()) {
    if (s.contains(ij.first)) out.set(ij.first, ij.second, v);
  }
  return out;
}

/// F P_s: keep columns with index in s.
inline FiniteRankOperator project_cols(const FiniteRankOperator& f, const SubspaceSpec& s) {
  FiniteRankOperator out(f.mode());
  for (const auto& [ij, v] : f.entries()) {
    if (s.contains(ij.second)) out.set(ij.first, ij.second, v);
  }
  return out;
}

inline Scalar trace(const FiniteRankOperator& f) {
  Scalar t = Scalar::zero(f.mode());
  for (const auto& [ij, v] : f.entries()) {
    if (ij.first == ij.second) t = t + v;
  }
  return t;
}

namespace detail {

/// Dense copy of the support block (non-zero rows x non-zero columns).
inline DenseBlock support_block(const FiniteRankOperator& f) {
  std::map<Index, std::size_t> rows, cols;
  for (const auto& [ij, v] : f.entries()) {
    rows.emplace(ij.first, 0);
    cols.emplace(ij.second, 0);
  }
  std::size_t k = 0;
  for (auto& [i, slot] : rows) slot = k++;
  k = 0;
  for (auto& [j, slot] : cols) slot = k++;
  DenseBlock b(rows.size(), cols.size());
  for (const auto& [ij, v] : f.entries()) {
    b.at(rows[ij.first], cols[ij.second]) = v.to_double();
  }
  return b;
}

}  // namespace detail

/// Largest singular value of the support block.  Returns a plain double even
/// for exact operators; singular values of dyadic matrices are irrational in
/// general, so no exactness is claimed here.
inline double operator_norm(const FiniteRankOperator& f) {
  if (f.empty()) return 0.0;
  const auto sv = detail::jacobi_singular_values(detail::support_block(f));
  return sv.empty() ? 0.0 : sv.front();
}

/// Sum of singular values of the support block.
inline double trace_norm(const FiniteRankOperator& f) {
  if (f.empty()) return 0.0;
  double s = 0.0;
  for (double v : detail::jacobi_singular_values(detail::support_block(f))) s += v;
  return s;
}

inline double norm(const FiniteRankOperator& f, NormKind which) {
  return which == NormKind::op ? operator_norm(f) : trace_norm(f);
}

inline double distance(const FiniteRankOperator& f, const FiniteRankOperator& g, NormKind which) {
  const Scalar one = Scalar::one(f.mode());
  return norm(combine(f, g, one, -one), which);
}

/// When F has at most one entry per row and per column its columns are
/// orthogonal with norms |c|, so the operator norm is exactly max|c|.
inline std::optional<Scalar> exact_gp_norm(const FiniteRankOperator& f) {
  if (f.empty()) return Scalar::zero(f.mode());
  std::set<Index> rows, cols;
  for (const auto& [ij, v] : f.entries()) {
    if (!rows.insert(ij.first).second) return std::nullopt;
    if (!cols.insert(ij.second).second) return std::nullopt;
  }
  Scalar best = Scalar::zero(f.mode());
  for (const auto& [ij, v] : f.entries()) best = max(best, v.abs());
  return best;
}

/// Trace-norm companion of exact_gp_norm: for a generalized permutation the
/// singular values are the entry magnitudes, so the trace norm is their sum.
inline std::optional<Scalar> exact_gp_trace_norm(const FiniteRankOperator& f) {
  if (!exact_gp_norm(f)) return std::nullopt;
  Scalar s = Scalar::zero(f.mode());
  for (const auto& [ij, v] : f.entries()) s = s + v.abs();
  return s;
}

/// Triplet serialization (row, col, value-text), row-major order.
inline std::vector<std::array<std::string, 3>> to_triplets(const FiniteRankOperator& f) {
  std::vector<std::array<std::string, 3>> out;
  out.reserve(f.entry_count());
  for (const auto& [ij, v] : f.entries()) {
    out.push_back({std::to_string(ij.first), std::to_string(ij.second), v.text()});
  }
  return out;
}

}  // namespace elop

#endif  // ELOP_FINITE_RANK_HPP
