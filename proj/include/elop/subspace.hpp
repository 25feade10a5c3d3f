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

#ifndef ELOP_SUBSPACE_HPP
#define ELOP_SUBSPACE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "elop/errors.hpp"

namespace elop {

using Index = std::int64_t;

/// Finite set of basis indices, kept strictly increasing.  The span of
/// {e_i : i in the set} is the subspace it denotes; leading(m) = {1..m}.
class SubspaceSpec {
 public:
  SubspaceSpec() = default;

  explicit SubspaceSpec(std::vector<Index> indices) : idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
    if (!idx_.empty() && idx_.front() < 1) {
      throw domain_error("subspace indices must be positive");
    }
  }

  static SubspaceSpec leading(Index m) {
    if (m < 0) throw domain_error("leading subspace size must be non-negative");
    std::vector<Index> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), Index{1});
    return SubspaceSpec(std::move(v));
  }

  bool empty() const { return idx_.empty(); }
  std::size_t size() const { return idx_.size(); }
  Index max_index() const { return idx_.empty() ? 0 : idx_.back(); }

  bool contains(Index i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

  const std::vector<Index>& indices() const { return idx_; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

  friend bool operator==(const SubspaceSpec& a, const SubspaceSpec& b) { return a.idx_ == b.idx_; }
  friend bool operator!=(const SubspaceSpec& a, const SubspaceSpec& b) { return !(a == b); }

  std::string to_text() const {
    std::string s = "{";
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(idx_[i]);
    }
    return s + "}";
  }

 private:
  std::vector<Index> idx_;
};

/// Partition into (odd-valued indices, even-valued indices).
inline std::pair<SubspaceSpec, SubspaceSpec> split_by_parity(const SubspaceSpec& s) {
  if (s.empty()) throw precondition_error("split_by_parity: empty subspace");
  std::vector<Index> odd, even;
  for (Index i : s) (i % 2 != 0 ? odd : even).push_back(i);
  return {SubspaceSpec(std::move(odd)), SubspaceSpec(std::move(even))};
}

}  // namespace elop

#endif  // ELOP_SUBSPACE_HPP
