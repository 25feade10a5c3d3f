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

#ifndef ELOP_PERMUTATION_HPP
#define ELOP_PERMUTATION_HPP

#include <functional>
#include <set>
#include <string>
#include <utility>

#include "elop/errors.hpp"
#include "elop/subspace.hpp"

namespace elop {

/// Indices live in [1, 2^32]; anything beyond is refused loudly.
inline constexpr Index kIndexCap = Index{1} << 32;

inline Index checked_index(Index j, const char* what) {
  if (j < 1) throw domain_error(std::string(what) + ": index must be positive");
  if (j > kIndexCap) throw domain_error(std::string(what) + ": index exceeds the 2^32 cap");
  return j;
}

/// Bijection of the positive integers given by a forward map and its inverse.
/// Totality and mutual inverseness are only checkable on finite ranges;
/// verify_bijection probes them on demand.
class PermutationRule {
 public:
  using Map = std::function<Index(Index)>;

  PermutationRule(Map forward, Map backward, std::string description)
      : fwd_(std::move(forward)), bwd_(std::move(backward)), desc_(std::move(description)) {}

  Index forward(Index j) const { return checked_index(fwd_(checked_index(j, desc_.c_str())), desc_.c_str()); }
  Index backward(Index j) const { return checked_index(bwd_(checked_index(j, desc_.c_str())), desc_.c_str()); }

  const std::string& description() const { return desc_; }

  PermutationRule inverted() const {
    return PermutationRule(bwd_, fwd_, desc_ + "^-1");
  }

  /// Checks backward(forward(j)) == j == forward(backward(j)) and injectivity
  /// of the forward map on [1, horizon].
  bool verify_bijection(Index horizon) const {
    std::set<Index> images;
    for (Index j = 1; j <= horizon; ++j) {
      const Index f = forward(j);
      if (backward(f) != j) return false;
      if (forward(backward(j)) != j) return false;
      if (!images.insert(f).second) return false;
    }
    return true;
  }

 private:
  Map fwd_, bwd_;
  std::string desc_;
};

inline PermutationRule identity_rule() {
  return PermutationRule([](Index j) { return j; }, [](Index j) { return j; }, "identity");
}

/// Successor map under the integer zigzag enumeration 1,2,3,4,5,... <->
/// 0,1,-1,2,-2,...  Concretely: 1 -> 2, even j -> j+2, odd j >= 3 -> j-2.
/// Every index lies on one bi-infinite orbit, so every finite index set is
/// eventually disjoint from its forward iterates.
inline PermutationRule zigzag_successor_rule() {
  auto fwd = [](Index j) -> Index {
    if (j == 1) return 2;
    if (j % 2 == 0) return j + 2;
    return j - 2;
  };
  auto bwd = [](Index j) -> Index {
    if (j == 2) return 1;
    if (j % 2 == 0) return j - 2;
    return j + 2;
  };
  return PermutationRule(fwd, bwd, "zigzag_successor");
}

/// Inverse of the zigzag successor: odd j -> j+2, 2 -> 1, even j > 2 -> j-2.
inline PermutationRule zigzag_predecessor_rule() {
  auto fwd = [](Index j) -> Index {
    if (j == 2) return 1;
    if (j % 2 == 0) return j - 2;
    return j + 2;
  };
  auto bwd = [](Index j) -> Index {
    if (j == 1) return 2;
    if (j % 2 == 0) return j + 2;
    return j - 2;
  };
  return PermutationRule(fwd, bwd, "zigzag_predecessor");
}

/// Consecutive blocks {1..p}, {p+1..2p}, ... each rotated one step forward.
/// The p-th power is the identity.
inline PermutationRule cyclic_blocks_rule(Index period) {
  if (period < 1) throw domain_error("cyclic block period must be >= 1");
  auto fwd = [period](Index j) -> Index {
    return (j % period == 0) ? j - period + 1 : j + 1;
  };
  auto bwd = [period](Index j) -> Index {
    return (j % period == 1 || period == 1) ? j + period - 1 : j - 1;
  };
  return PermutationRule(fwd, bwd, "cycle " + std::to_string(period));
}

}  // namespace elop

#endif  // ELOP_PERMUTATION_HPP
