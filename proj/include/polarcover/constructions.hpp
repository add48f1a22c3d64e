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

#ifndef POLARCOVER_CONSTRUCTIONS_HPP_
#define POLARCOVER_CONSTRUCTIONS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polarcover/counting.hpp"
#include "polarcover/ovoid.hpp"
#include "polarcover/search.hpp"

namespace polarcover {

struct ConstructionReport {
  std::string name;
  nlohmann::json details = nlohmann::json::object();
  VerificationReport verification;
};

/// An ovoid together with the data produced while building it. Every
/// construction verifies its output and throws std::logic_error if the
/// result is not EXACT.
struct Construction {
  OvoidSet ovoid;
  ConstructionReport report;
};

nlohmann::json to_json(const ConstructionReport& report);
nlohmann::json to_json(const VerificationReport& report);

/// The set of all generators.
Construction all_generators_ovoid(SpacePtr space, const EnumerationBudget& budget = {});

/// Projects an (r,k)-ovoid (k < r) into the quotient of a point P lying in
/// no member. Without P, the lex-first such point is used; DomainError if
/// every point lies in a member.
Construction quotient_ovoid(const OvoidSet& ovoid,
                            const std::optional<Subspace>& point = std::nullopt);

/// Supplies the inner ovoid for one outer member; `so_far` holds the lifts
/// already chosen for earlier members.
using InnerFactory =
    std::function<OvoidSet(const QuotientMap& quotient, const std::vector<Subspace>& so_far)>;

/// Generators of the quotient base (k = rank of the base).
InnerFactory all_generators_inner();
/// Embedded comaximal ovoid of the quotient base.
InnerFactory embedded_inner();
enum class InnerChoice { kFirst, kMaxOverlap };
/// (rank, k)-ovoids of the base by exact cover search. kMaxOverlap takes,
/// among the first `limit` covers, one whose lifts share the most points
/// with `so_far`.
InnerFactory search_inner(int k, InnerChoice choice, std::size_t limit = 2000,
                          const SearchBudget& budget = {});

/// Union over outer members alpha of <alpha, tau>, tau in the inner ovoid
/// at alpha.
Construction product_ovoid(const OvoidSet& outer, const InnerFactory& inner);

/// A hyperplane section carrying an (r, r-1)-ovoid.
struct EmbeddedPair {
  SpacePtr space;
  Subspace hyperplane;
  SpacePtr section;
  Chart chart;  // section coordinates -> ambient
};

/// Lex-first non-degenerate hyperplane section of the paired kind
/// (Q+ -> Q, H odd -> H even, Q -> Q-). DomainError for other kinds.
EmbeddedPair embedded_pair(SpacePtr space);
Construction embedded_comaximal_ovoid(SpacePtr space);

enum class CapPolicy { kEnforce, kWarn };

/// Replaces, for each point P of R (ambient coordinates, a partial ovoid of
/// the section), the section members through P by the lifts of another
/// section of the quotient at P. Requires rank >= 3.
Construction local_modification(const EmbeddedPair& pair, const std::vector<Subspace>& R,
                                CapPolicy policy = CapPolicy::kEnforce);

struct MatchingGraph {
  SpacePtr space;
  std::vector<Subspace> left;
  std::vector<Subspace> right;
  std::vector<std::vector<std::size_t>> adjacency;  // left index -> right indices
  std::size_t v = 0;
  std::size_t deg = 0;
};

/// Generator classes by parity of r - dim(g meet g0), g0 the first
/// generator; edges join generators meeting in an (r-1)-space.
MatchingGraph build_matching_graph(SpacePtr space);
/// Perfect matching by augmenting paths; the matched intersections.
Construction matching_ovoid(const MatchingGraph& graph);
/// Permanent of the biadjacency matrix. DomainError for v > 20.
BigInt count_perfect_matchings(const MatchingGraph& graph);

/// Lex-first 2-space of V(6,q) without singular points for Q+(5,q).
Subspace exterior_line(const PolarSpace& qplus5);
/// The q^2+1 points of exterior_line(P)^perp on the quadric.
Construction classical_ovoid_qplus5(unsigned q);
/// Lines of Q+(5,q) in the solids <m, l>, m running over a regular spread
/// of l^perp.
Construction qplus32_ovoid(unsigned q);

/// Field reduction of Q-(3,4) to Q-(7,2): the 17 reduced lines and the
/// passants. Census counts lines of Q-(7,2) by |line meet X|.
Construction msystem32_ovoid_q2();

/// Classical ovoid of Q+(5,q) with its lex-first point P replaced by the
/// lines over an ovoid of the quotient at P.
Construction replacement_example(unsigned q);

}  // namespace polarcover

#endif  // POLARCOVER_CONSTRUCTIONS_HPP_
