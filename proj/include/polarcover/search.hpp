// Copyright 2026 The polarcover Authors.
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

#ifndef POLARCOVER_SEARCH_HPP_
#define POLARCOVER_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "polarcover/ovoid.hpp"

namespace polarcover {

/// Generators as the universe, totally isotropic subspaces as candidate
/// sets (each covering the generators through it).
struct CoverInstance {
  SpacePtr space;
  std::vector<int> allowed_dims;
  std::vector<Subspace> generators;  // sorted
  /// Sorted by dimension, then lex.
  std::vector<Subspace> candidates;
  /// covers[i]: sorted generator ids through candidates[i].
  std::vector<std::vector<std::uint32_t>> covers;
};

CoverInstance build_instance(SpacePtr space, std::vector<int> allowed_dims,
                             const EnumerationBudget& budget = {});

enum class BoundKind {
  kSimple,    // chosen + ceil(uncovered / largest remaining set)
  kWeighted,  // chosen + ceil(sum over uncovered g of 1 / largest set through g)
  kPacking,   // max of kWeighted and a bound from the disjoint largest sets
};

struct SearchBudget {
  double seconds = 60.0;
  std::uint64_t nodes = 10'000'000;
  /// Worker threads; 1 (or deterministic) runs a single sequential search.
  int threads = 1;
  bool deterministic = true;
  BoundKind bound = BoundKind::kPacking;
};

enum class SearchStatus { kOptimal, kFeasible, kInfeasible, kBudgetExhausted };
std::string_view search_status_name(SearchStatus s);

struct SearchStats {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  std::uint64_t peak_frontier = 0;  // deepest stack
};

struct SearchResult {
  SearchStatus status = SearchStatus::kBudgetExhausted;
  std::optional<OvoidSet> best;
  std::size_t size = 0;
  std::size_t lower_bound_proved = 0;
  SearchStats stats;
};

/// Branch and bound for a minimum exact cover. `incumbent`, when given,
/// must be an exact cover by candidates and seeds the upper bound.
SearchResult min_generalized_ovoid(const CoverInstance& instance,
                                   const SearchBudget& budget = {},
                                   const std::optional<OvoidSet>& incumbent = std::nullopt);

/// Existence of an (r,k)-ovoid. A warm start that verifies as such an
/// ovoid is returned directly.
SearchResult homogeneous_exists(SpacePtr space, int k, const SearchBudget& budget = {},
                                const std::optional<OvoidSet>& warm_start = std::nullopt);

/// Up to `limit` exact covers in search order, as candidate index lists.
std::vector<std::vector<std::size_t>> enumerate_exact_covers(const CoverInstance& instance,
                                                             std::size_t limit,
                                                             const SearchBudget& budget = {});

}  // namespace polarcover

#endif  // POLARCOVER_SEARCH_HPP_
