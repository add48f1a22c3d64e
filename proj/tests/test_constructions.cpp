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

#include <set>

#include "doctest.h"
#include "polarcover/constructions.hpp"
#include "polarcover/counting.hpp"
#include "polarcover/error.hpp"

using namespace polarcover;

namespace {

std::set<Subspace> covered_points(const OvoidSet& o) {
  std::set<Subspace> out;
  const auto& F = o.space().field();
  for (const auto& p : o.space().enumerate_ti(1)) {
    for (const auto& m : o.members()) {
      if (is_subspace_of(F, p, m)) {
        out.insert(p);
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("all-generators construction") {
  CHECK(all_generators_ovoid(share(make_space("Q+(3,2)"))).ovoid.size() == 6);
  const Construction w = all_generators_ovoid(share(make_space("W(5,2)")));
  CHECK(w.ovoid.size() == 135);
  CHECK(type_signature(w.ovoid) == "3^135");
  CHECK(w.report.verification.status == Status::kExact);
  CHECK(w.report.verification.histogram == std::map<int, std::uint64_t>{{1, 135}});
}

TEST_CASE("qplus32 construction") {
  for (unsigned q : {2u, 3u}) {
    const Construction c = qplus32_ovoid(q);
    const auto& d = c.report.details;
    CHECK(c.ovoid.size() == q * q * q + q * q + q + 1);
    CHECK(c.ovoid.homogeneous_dim() == 2);
    CHECK(d["perp_section"] == "Q-(3," + std::to_string(q) + ")");
    CHECK(d["spread_size"] == q * q + 1);
    CHECK(d["spread_accounting"] == true);
    CHECK(d["plane_lemma"] == true);
    CHECK(d["solid_lemma"] == true);
    std::size_t total = 0;
    for (const auto& m : d["spread"]) {
      const std::string cls = m["class"];
      const std::size_t n = m["members"];
      total += n;
      if (cls == "tangent") CHECK(n == q + 1);
      if (cls == "bisecant") CHECK(n == 0);
      if (cls == "external") CHECK(n == 2 * q + 2);
    }
    CHECK(total == c.ovoid.size());
  }
  // The exterior line really has no singular point.
  const auto P = make_space("Q+(5,2)");
  const Subspace ell = exterior_line(P);
  for_each_point(P.field(), 2, [&](const Vector& y) {
    CHECK(!P.is_singular(combine(P.field(), ell, y)));
  });
}

TEST_CASE("classical ovoid") {
  for (unsigned q : {2u, 3u}) {
    const Construction c = classical_ovoid_qplus5(q);
    CHECK(c.ovoid.size() == q * q + 1);
    CHECK(c.ovoid.homogeneous_dim() == 1);
  }
}

TEST_CASE("product and quotient") {
  const OvoidSet outer = classical_ovoid_qplus5(2).ovoid;
  const PolarSpace& Q5 = outer.space();
  for (InnerChoice choice : {InnerChoice::kFirst, InnerChoice::kMaxOverlap}) {
    const Construction p = product_ovoid(outer, search_inner(1, choice));
    CHECK(p.ovoid.size() == 15);
    CHECK(p.ovoid.size() == outer.size() * 3);
    CHECK(p.report.details["reducible"] == true);
    const auto w = reducibility_witness(p.ovoid, ReduceMode::kPairwise);
    REQUIRE(w.has_value());
    CHECK(w->members_selected.size() >= 2);
    for (const auto& m : w->members_selected) CHECK(is_subspace_of(Q5.field(), w->pi, m));
    const auto rw = reducibility_witness(p.ovoid, ReduceMode::kReplaceable);
    REQUIRE(rw.has_value());
    CHECK(rw->replaced.size() < p.ovoid.size());
    CHECK(verify(OvoidSet(outer.space_ptr(), rw->replaced)).status == Status::kExact);
    // Each alpha lies in its three lifts.
    for (const auto& alpha : outer.members()) {
      int through = 0;
      for (const auto& m : p.ovoid.members()) through += is_subspace_of(Q5.field(), alpha, m);
      CHECK(through == 3);
    }

    const Construction q = quotient_ovoid(p.ovoid);
    CHECK(q.ovoid.size() == 6);
    CHECK(q.ovoid.space().descriptor().to_string() == "Q+(3,2)");
  }
  const Construction e = product_ovoid(outer, embedded_inner());
  CHECK(e.ovoid.size() == 15);
  const Construction g = product_ovoid(outer, all_generators_inner());
  CHECK(g.ovoid.size() == 30);

  // k = r and points inside members are refused.
  auto Q = share(make_space("Q+(5,2)"));
  CHECK_THROWS_AS(quotient_ovoid(OvoidSet(Q, Q->generators())), DomainError);
  const OvoidSet q32 = qplus32_ovoid(2).ovoid;
  const auto inside = q32.members().front();
  const Subspace pt = span_of(Q->field(), 6, inside.row(0));
  CHECK_THROWS_AS(quotient_ovoid(q32, pt), DomainError);
  CHECK_THROWS_AS(quotient_ovoid(OvoidSet(Q, {pt})), DomainError);
}

TEST_CASE("quotient of the elliptic (3,2)-ovoid") {
  // Every point of Q-(7,2) lies on one of the 153 lines, so the lemma's
  // point does not exist for this ovoid.
  const OvoidSet m = msystem32_ovoid_q2().ovoid;
  CHECK(covered_points(m).size() == 119);
  CHECK_THROWS_AS(quotient_ovoid(m), DomainError);
  // The quotient of any point still yields Q-(5,2), whose 45 lines form the
  // (2,2)-ovoid of the expected size.
  CHECK(ovoid_size(2, 2, 4, 2) == 45);
}

TEST_CASE("embedded comaximal ovoids") {
  const Construction a = embedded_comaximal_ovoid(share(make_space("Q+(5,2)")));
  CHECK(a.ovoid.size() == 15);
  CHECK(a.report.details["section"] == "Q(4,2)");
  const Construction b = embedded_comaximal_ovoid(share(make_space("Q(4,2)")));
  CHECK(b.ovoid.size() == 5);
  CHECK(b.report.details["section"] == "Q-(3,2)");
  const Construction c = embedded_comaximal_ovoid(share(make_space("H(3,4)")));
  CHECK(c.ovoid.size() == 9);
  CHECK(embedded_comaximal_ovoid(share(make_space("Q+(7,2)"))).ovoid.size() ==
        ovoid_size(4, 3, 0, 2));
  for (const char* d : {"W(5,2)", "Q-(5,2)", "H(4,4)"}) {
    CHECK_THROWS_AS(embedded_comaximal_ovoid(share(make_space(d))), DomainError);
  }
}

TEST_CASE("local modification") {
  const EmbeddedPair pair = embedded_pair(share(make_space("Q+(5,2)")));
  const auto pts = pair.section->enumerate_ti(1);
  const Subspace P = pair.chart.embed(pts.front());
  const Construction base = embedded_comaximal_ovoid(pair.space);

  CHECK_THROWS_AS(local_modification(pair, {P}), DomainError);  // 1 > 4/5
  const Construction m = local_modification(pair, {P}, CapPolicy::kWarn);
  CHECK(m.ovoid.size() == 15);
  CHECK(m.report.details["cap_exceeded"] == true);
  CHECK(m.ovoid.members() != base.ovoid.members());
  CHECK(m.report.details["points"][0]["replaced"] == 3);
  CHECK(m.report.details["points"][0]["added"] == 3);

  const Construction same = local_modification(pair, {});
  CHECK(same.ovoid.members() == base.ovoid.members());

  // Rank 4: the cap 8/5 admits one point and refuses two.
  const EmbeddedPair p4 = embedded_pair(share(make_space("Q+(7,2)")));
  const auto s4 = p4.section->enumerate_ti(1);
  const Subspace A = p4.chart.embed(s4.front());
  const Construction one = local_modification(p4, {A});
  CHECK(one.report.details["cap_exceeded"] == false);
  CHECK(one.report.details["differs_from_embedded"] == true);
  Subspace B;
  for (const auto& x : s4) {
    const Subspace X = p4.chart.embed(x);
    if (!p4.space->is_totally_isotropic(span_sum(p4.space->field(), A, X))) {
      B = X;
      break;
    }
  }
  CHECK_THROWS_AS(local_modification(p4, {A, B}), DomainError);
  const Construction two = local_modification(p4, {A, B}, CapPolicy::kWarn);
  CHECK(two.report.details["points"].size() == 2);

  // Collinear points are not a partial ovoid.
  Subspace C;
  for (const auto& x : s4) {
    const Subspace X = p4.chart.embed(x);
    if (X != A && p4.space->is_totally_isotropic(span_sum(p4.space->field(), A, X))) {
      C = X;
      break;
    }
  }
  CHECK_THROWS_AS(local_modification(p4, {A, C}, CapPolicy::kWarn), DomainError);
}

TEST_CASE("matching construction") {
  const MatchingGraph g = build_matching_graph(share(make_space("Q+(5,2)")));
  CHECK(g.v == 15);
  CHECK(g.deg == 7);
  CHECK(g.left.size() == 15);
  CHECK(g.right.size() == 15);
  const auto& F = g.space->field();
  for (std::size_t i = 0; i < g.v; ++i) {
    for (std::size_t j = 0; j < g.v; ++j) {
      const bool adj = std::find(g.adjacency[i].begin(), g.adjacency[i].end(), j) !=
                       g.adjacency[i].end();
      CHECK(adj == (intersect(F, g.left[i], g.right[j]).dim() == 2));
    }
  }
  const Construction m = matching_ovoid(g);
  CHECK(m.ovoid.size() == 15);
  CHECK(m.ovoid.homogeneous_dim() == 2);
  const BigInt perm = count_perfect_matchings(g);
  CHECK(Rational(perm) >= schrijver_bound(15, 7).value);

  const MatchingGraph small = build_matching_graph(share(make_space("Q+(3,2)")));
  CHECK(small.v == 3);
  CHECK(small.deg == 3);
  CHECK(count_perfect_matchings(small) == 6);
  CHECK(matching_ovoid(small).ovoid.size() == 3);

  MatchingGraph id = small;
  for (std::size_t i = 0; i < 3; ++i) id.adjacency[i] = {i};
  CHECK(count_perfect_matchings(id) == 1);

  MatchingGraph big = small;
  big.v = 21;
  CHECK_THROWS_AS(count_perfect_matchings(big), DomainError);
  CHECK_THROWS_AS(build_matching_graph(share(make_space("W(5,2)"))), DomainError);
}

TEST_CASE("msystem construction") {
  const Construction c = msystem32_ovoid_q2();
  const auto& d = c.report.details;
  CHECK(c.ovoid.size() == 153);
  CHECK(d["census"]["3"] == 17);
  CHECK(d["census"]["2"] == 408);
  CHECK(d["census"]["1"] == 510);
  CHECK(d["census"]["0"] == 136);
  CHECK(d["x_points"] == 51);
  CHECK(d["x_lines_in_result"] == 17);
  CHECK(d["reduced_status"] == "EXACT");
  CHECK(17 + 408 + 510 + 136 == count_ti(Kind::kElliptic, 3, 2, 2));
}

TEST_CASE("replacement example") {
  const Construction c = replacement_example(2);
  CHECK(type_signature(c.ovoid) == "1^4 2^3");
  CHECK(replacement_example(3).ovoid.size() == 9 + 4);
}
