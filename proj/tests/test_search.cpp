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

#include <algorithm>

#include "doctest.h"
#include "polarcover/constructions.hpp"
#include "polarcover/counting.hpp"
#include "polarcover/search.hpp"

using namespace polarcover;

namespace {

std::size_t sum_cover(const OvoidSet& o) {
  std::size_t s = 0;
  for (const auto& m : o.members()) s += o.space().generators_through(m).size();
  return s;
}

}  // namespace

TEST_CASE("cover instance for W(5,2)") {
  auto W = share(make_space("W(5,2)"));
  const CoverInstance inst = build_instance(W, {1, 2, 3});
  CHECK(inst.generators.size() == 135);
  CHECK(inst.candidates.size() == 63 + 315 + 135);
  for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
    const int d = inst.candidates[i].dim();
    CHECK(inst.covers[i].size() == (d == 1 ? 15u : d == 2 ? 3u : 1u));
    CHECK(inst.covers[i].size() == W->generators_through(inst.candidates[i]).size());
  }
  CHECK(std::is_sorted(inst.candidates.begin(), inst.candidates.end()));
}

TEST_CASE("minimum search on small spaces") {
  auto Q = share(make_space("Q+(5,2)"));
  SearchResult r = min_generalized_ovoid(build_instance(Q, {1}));
  CHECK(r.status == SearchStatus::kOptimal);
  CHECK(r.size == 5);
  CHECK(r.lower_bound_proved == 5);
  REQUIRE(r.best);
  CHECK(verify(*r.best).status == Status::kExact);
  CHECK(sum_cover(*r.best) == 30);

  for (const char* d : {"Q+(3,2)", "W(3,2)", "Q(4,2)"}) {
    auto P = share(make_space(d));
    const SearchResult full = min_generalized_ovoid(build_instance(P, {P->rank()}));
    CHECK(full.status == SearchStatus::kOptimal);
    CHECK(full.size == P->generators().size());
  }

  // W(3,2) has no ovoid; the best mixed cover is found and proved.
  auto W3 = share(make_space("W(3,2)"));
  const SearchResult w3 = min_generalized_ovoid(build_instance(W3, {1, 2}));
  CHECK(w3.status == SearchStatus::kOptimal);
  REQUIRE(w3.best);
  CHECK(verify(*w3.best).status == Status::kExact);
  CHECK(sum_cover(*w3.best) == 15);
}

TEST_CASE("bound kinds agree on the optimum") {
  auto Q = share(make_space("W(3,3)"));
  const CoverInstance inst = build_instance(Q, {1, 2});
  std::size_t sizes[3];
  int i = 0;
  for (BoundKind b : {BoundKind::kSimple, BoundKind::kWeighted, BoundKind::kPacking}) {
    SearchBudget budget;
    budget.bound = b;
    const SearchResult r = min_generalized_ovoid(inst, budget);
    CHECK(r.status == SearchStatus::kOptimal);
    sizes[i++] = r.size;
  }
  CHECK(sizes[0] == sizes[1]);
  CHECK(sizes[1] == sizes[2]);
}

TEST_CASE("determinism and parallel agreement") {
  auto Q = share(make_space("Q+(5,2)"));
  const CoverInstance inst = build_instance(Q, {1, 2});
  const SearchResult a = min_generalized_ovoid(inst);
  const SearchResult b = min_generalized_ovoid(inst);
  CHECK(a.stats.nodes == b.stats.nodes);
  REQUIRE(a.best);
  REQUIRE(b.best);
  CHECK(a.best->members() == b.best->members());

  SearchBudget par;
  par.threads = 4;
  par.deterministic = false;
  const SearchResult c = min_generalized_ovoid(inst, par);
  CHECK(c.status == a.status);
  CHECK(c.size == a.size);
  REQUIRE(c.best);
  CHECK(verify(*c.best).status == Status::kExact);
}

TEST_CASE("budget exhaustion keeps the incumbent") {
  auto W = share(make_space("W(5,2)"));
  const CoverInstance inst = build_instance(W, {1, 2, 3});
  SearchBudget tiny;
  tiny.nodes = 50;
  const OvoidSet all(W, W->generators());
  const SearchResult r = min_generalized_ovoid(inst, tiny, all);
  CHECK(r.status == SearchStatus::kBudgetExhausted);
  REQUIRE(r.best);
  CHECK(r.size <= 135);
  CHECK(r.lower_bound_proved <= r.size);
  CHECK(verify(*r.best).status == Status::kExact);
}

TEST_CASE("homogeneous existence") {
  auto W = share(make_space("W(5,2)"));
  const SearchResult none = homogeneous_exists(W, 1);
  CHECK(none.status == SearchStatus::kInfeasible);
  CHECK(!none.best);

  auto Q = share(make_space("Q+(5,2)"));
  const SearchResult yes = homogeneous_exists(Q, 2);
  CHECK(yes.status == SearchStatus::kFeasible);
  REQUIRE(yes.best);
  CHECK(yes.best->size() == 15);
  CHECK(verify(*yes.best).status == Status::kExact);

  const SearchResult trivial = homogeneous_exists(Q, 3);
  CHECK(trivial.status == SearchStatus::kFeasible);
  CHECK(trivial.size == 30);

  const OvoidSet warm = msystem32_ovoid_q2().ovoid;
  auto E = share(make_space("Q-(7,2)"));
  const SearchResult m = homogeneous_exists(E, 2, {}, warm);
  CHECK(m.status == SearchStatus::kFeasible);
  CHECK(m.size == 153);
}

TEST_CASE("enumerating exact covers") {
  // Ovoids of the 3x3 grid Q+(3,2): the 3! permutation matrices.
  auto Q = share(make_space("Q+(3,2)"));
  const CoverInstance inst = build_instance(Q, {1});
  const auto covers = enumerate_exact_covers(inst, 100);
  CHECK(covers.size() == 6);
  // Oracle: all 3-subsets of the 9 points that verify EXACT.
  const auto pts = Q->enumerate_ti(1);
  std::size_t brute = 0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c)
        brute += verify(OvoidSet(Q, {pts[a], pts[b], pts[c]})).status == Status::kExact;
  CHECK(brute == 6);
  CHECK(enumerate_exact_covers(inst, 2).size() == 2);
}
