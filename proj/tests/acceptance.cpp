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

// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            criteria 1..11
//   acceptance 3 7        selected criteria
//   acceptance 4-proof    optimality proof for W(5,2) (slow)

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "polarcover/constructions.hpp"
#include "polarcover/counting.hpp"
#include "polarcover/error.hpp"
#include "polarcover/ovoid.hpp"
#include "polarcover/polar_space.hpp"
#include "polarcover/search.hpp"

using namespace polarcover;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

std::string str(const BigInt& x) { return x.str(); }

// ---------------------------------------------------------------------------

void counting_suite(Outcome& out) {
  struct Case {
    Kind kind;
    std::vector<unsigned> qs;
  };
  const std::vector<Case> cases = {
      {Kind::kHyperbolic, {2, 3, 4}},   {Kind::kParabolic, {2, 3, 4}},
      {Kind::kElliptic, {2, 3, 4}},     {Kind::kSymplectic, {2, 3, 4}},
      {Kind::kHermitianOdd, {4}},       {Kind::kHermitianEven, {4}},
  };
  int spaces = 0, comparisons = 0;
  std::map<std::string, std::vector<std::size_t>> seen;
  for (const auto& c : cases) {
    for (unsigned q : c.qs) {
      for (int r = 1; r <= 3; ++r) {
        const SpaceDescriptor d{c.kind, r, q};
        const PolarSpace P = PolarSpace::standard(d);
        ++spaces;
        for (int k = 1; k <= r; ++k) {
          const std::size_t got = P.enumerate_ti(k).size();
          const BigInt want = count_ti(c.kind, r, k, q);
          ++comparisons;
          out.check(BigInt(got) == want, d.to_string() + " k=" + std::to_string(k) + ": enumerated " +
                                             std::to_string(got) + ", formula " + str(want));
          seen[d.to_string()].push_back(got);
        }
      }
    }
  }
  const std::map<std::string, std::vector<std::size_t>> spot = {
      {"Q+(5,2)", {35, 105, 30}},
      {"W(5,2)", {63, 315, 135}},
      {"Q-(7,2)", {119, 1071, 765}},
      {"H(3,4)", {45, 27}},
  };
  for (const auto& [name, want] : spot) {
    out.check(seen[name] == want, "spot value mismatch for " + name);
  }
  out.summary = std::to_string(spaces) + " spaces, " + std::to_string(comparisons) + " counts";
}

void qplus32(Outcome& out) {
  std::ostringstream s;
  for (unsigned q : {2u, 3u}) {
    const Construction c = qplus32_ovoid(q);
    const auto& d = c.report.details;
    const auto v = verify(c.ovoid);
    const std::size_t want = q * q * q + q * q + q + 1;
    const std::string tag = "q=" + std::to_string(q) + ": ";
    out.check(v.status == Status::kExact, tag + "not EXACT");
    out.check(c.ovoid.size() == want, tag + "size " + std::to_string(c.ovoid.size()));
    out.check(c.ovoid.homogeneous_dim() == 2, tag + "members are not all lines");
    out.check(d["spread_is_spread"] == true, tag + "spread does not partition the perp solid");
    out.check(d["plane_lemma"] == true, tag + "plane lemma fails");
    out.check(d["solid_lemma"] == true, tag + "solid lemma fails");
    std::size_t total = 0, lines = 0;
    for (const auto& m : d["spread"]) {
      const std::string cls = m["class"];
      const std::size_t n = m["members"];
      total += n;
      ++lines;
      if (cls == "tangent") out.check(n == q + 1, tag + "tangent spread line carries " + std::to_string(n));
      else if (cls == "bisecant") out.check(n == 0, tag + "bisecant spread line carries " + std::to_string(n));
      else if (cls == "external") out.check(n == 2 * q + 2, tag + "external spread line carries " + std::to_string(n));
      else out.check(false, tag + "unknown class " + cls);
    }
    out.check(lines == q * q + 1, tag + "spread has " + std::to_string(lines) + " lines");
    out.check(total == c.ovoid.size(), tag + "spread accounting off");
    s << (q == 2 ? "" : ", ") << "q=" << q << " size " << c.ovoid.size();
  }
  out.summary = s.str();
}

void msystem(Outcome& out) {
  const Construction c = msystem32_ovoid_q2();
  const auto& d = c.report.details;
  out.check(verify(c.ovoid).status == Status::kExact, "not EXACT");
  out.check(c.ovoid.size() == 153, "size " + std::to_string(c.ovoid.size()));
  out.check(c.ovoid.space().descriptor().to_string() == "Q-(7,2)", "wrong ambient space");
  out.check(c.ovoid.homogeneous_dim() == 2, "members are not all lines");
  const std::map<std::string, int> census = {{"3", 17}, {"2", 408}, {"1", 510}, {"0", 136}};
  for (const auto& [key, n] : census) {
    out.check(d["census"][key] == n, "census[" + key + "] = " + d["census"][key].dump());
  }
  out.summary = "size " + std::to_string(c.ovoid.size()) + ", census 17/408/510/136";
}

void w52_witness(Outcome& out) {
  const auto inst = build_instance(share(make_space("W(5,2)")), {1, 2, 3});
  SearchBudget b;
  b.seconds = 30.0;
  b.nodes = 1ull << 40;
  const SearchResult r = min_generalized_ovoid(inst, b);
  out.check(r.best.has_value(), "no witness found");
  if (!r.best) return;
  out.check(r.size == 21, "best size " + std::to_string(r.size));
  out.check(type_signature(*r.best) == "1^6 2^15", "type " + type_signature(*r.best));
  out.check(verify(*r.best).status == Status::kExact, "witness not EXACT");
  out.summary = "size " + std::to_string(r.size) + " type " + type_signature(*r.best) + ", " +
                std::string(search_status_name(r.status));
}

void w52_proof(Outcome& out) {
  const auto inst = build_instance(share(make_space("W(5,2)")), {1, 2, 3});
  SearchBudget b;
  b.seconds = 1790.0;
  b.nodes = 1ull << 40;
  const SearchResult r = min_generalized_ovoid(inst, b);
  out.check(r.status == SearchStatus::kOptimal,
            "status " + std::string(search_status_name(r.status)));
  out.check(r.size == 21, "size " + std::to_string(r.size));
  out.summary = std::string(search_status_name(r.status)) + " size " + std::to_string(r.size) +
                ", " + std::to_string(r.stats.nodes) + " nodes";
}

void product_quotient(Outcome& out) {
  const OvoidSet outer = classical_ovoid_qplus5(2).ovoid;
  const Construction p = product_ovoid(outer, search_inner(1, InnerChoice::kMaxOverlap));
  const BigInt inner = ovoid_size(2, 1, 0, 2);
  out.check(verify(p.ovoid).status == Status::kExact, "product not EXACT");
  out.check(p.ovoid.homogeneous_dim() == 2, "product is not a (3,2)-ovoid");
  out.check(BigInt(p.ovoid.size()) == BigInt(outer.size()) * inner,
            "product size " + std::to_string(p.ovoid.size()));
  out.check(p.ovoid.size() == 15, "product size is not 15");
  const Construction qo = quotient_ovoid(p.ovoid);
  out.check(verify(qo.ovoid).status == Status::kExact, "quotient not EXACT");
  out.check(qo.ovoid.homogeneous_dim() == 2 && qo.ovoid.space().rank() == 2,
            "quotient is not a (2,2)-ovoid");
  out.check(qo.ovoid.size() == 6, "quotient size " + std::to_string(qo.ovoid.size()));
  out.summary = "product " + std::to_string(p.ovoid.size()) + " = " + std::to_string(outer.size()) +
                "*" + str(inner) + ", quotient " + std::to_string(qo.ovoid.size());
}

void matching(Outcome& out) {
  const MatchingGraph g = build_matching_graph(share(make_space("Q+(5,2)")));
  out.check(g.v == 15, "v = " + std::to_string(g.v));
  out.check(g.deg == 7, "deg = " + std::to_string(g.deg));
  const Construction m = matching_ovoid(g);
  out.check(verify(m.ovoid).status == Status::kExact, "matching ovoid not EXACT");
  out.check(m.ovoid.size() == 15, "matching ovoid size " + std::to_string(m.ovoid.size()));
  const BigInt perm = count_perfect_matchings(g);
  const SchrijverBound sb = schrijver_bound(15, 7);
  out.check(Rational(perm) >= sb.value, "permanent below Schrijver bound");
  out.summary = "permanent " + str(perm) + " >= " + to_decimal(sb.value, 2);
}

std::size_t ti_inside(const PolarSpace& P, int k, const Subspace& H) {
  std::size_t c = 0;
  for (const auto& S : P.enumerate_ti(k)) c += is_subspace_of(P.field(), S, H) ? 1 : 0;
  return c;
}

void fractions(Outcome& out) {
  const PolarSpace Q = make_space("Q+(5,2)");
  const std::size_t a = ti_inside(Q, 2, Q.perp(Q.enumerate_ti(1).front()));
  const std::size_t at = Q.enumerate_ti(2).size();
  const PolarSpace W = make_space("W(5,2)");
  const std::size_t b = ti_inside(W, 1, W.perp(W.enumerate_ti(1).front()));
  const std::size_t bt = W.enumerate_ti(1).size();
  out.check(a == 33 && at == 105, "Q+(5,2): " + std::to_string(a) + "/" + std::to_string(at));
  out.check(b == 31 && bt == 63, "W(5,2): " + std::to_string(b) + "/" + std::to_string(bt));
  out.check(degenerate_hyperplane_fraction(3, 2, 0, 2) == Rational(a, at), "Q+(5,2) fraction differs");
  out.check(degenerate_hyperplane_fraction(3, 1, 2, 2) == Rational(b, bt), "W(5,2) fraction differs");
  out.summary = std::to_string(a) + "/" + std::to_string(at) + ", " + std::to_string(b) + "/" +
                std::to_string(bt);
}

// Every dimension class of a verified set is a partial (r,k)-ovoid.
void check_bounds(Outcome& out, const std::string& name, const OvoidSet& o, int& checked) {
  if (verify(o, Rule::kPartial).status == Status::kInvalid) {
    out.check(false, name + ": not a partial generalized ovoid");
    return;
  }
  const PolarSpace& P = o.space();
  const unsigned q = P.q();
  unsigned p = q, h = 1;
  for (unsigned d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  for (unsigned x = p; x < q; x *= p) ++h;
  for (const auto& [k, n] : o.dimension_counts()) {
    if (P.rank() < k + 1) continue;
    const BoundReport br = partial_rk_ovoid_bound(p, h, P.rank(), k, P.e2());
    ++checked;
    out.check(Rational(BigInt(n)) <= br.bound,
              name + " " + P.descriptor().to_string() + " k=" + std::to_string(k) + ": " +
                  std::to_string(n) + " members exceed bound " + to_decimal(br.bound, 2));
    if (k == 1) {
      const BmBound bm = bm_bound(p, h, P.n());
      ++checked;
      out.check(BigInt(n) <= bm.strong,
                name + ": " + std::to_string(n) + " points exceed Blokhuis-Moorhouse " + str(bm.strong));
    }
  }
}

void bounds(Outcome& out) {
  std::vector<std::pair<std::string, OvoidSet>> sets;
  for (unsigned q : {2u, 3u}) {
    sets.emplace_back("classical q=" + std::to_string(q), classical_ovoid_qplus5(q).ovoid);
    sets.emplace_back("qplus32 q=" + std::to_string(q), qplus32_ovoid(q).ovoid);
    sets.emplace_back("replacement q=" + std::to_string(q), replacement_example(q).ovoid);
  }
  sets.emplace_back("msystem", msystem32_ovoid_q2().ovoid);
  const OvoidSet outer = classical_ovoid_qplus5(2).ovoid;
  const OvoidSet prod = product_ovoid(outer, search_inner(1, InnerChoice::kMaxOverlap)).ovoid;
  sets.emplace_back("product", prod);
  sets.emplace_back("product all-generators", product_ovoid(outer, all_generators_inner()).ovoid);
  sets.emplace_back("quotient", quotient_ovoid(prod).ovoid);
  sets.emplace_back("matching", matching_ovoid(build_matching_graph(share(make_space("Q+(5,2)")))).ovoid);
  for (const char* d : {"Q+(5,2)", "Q(4,2)", "Q(6,2)", "H(3,4)", "Q+(7,2)"}) {
    sets.emplace_back(std::string("embedded ") + d, embedded_comaximal_ovoid(share(make_space(d))).ovoid);
  }
  {
    const EmbeddedPair p4 = embedded_pair(share(make_space("Q+(7,2)")));
    const Subspace A = p4.chart.embed(p4.section->enumerate_ti(1).front());
    sets.emplace_back("local modification Q+(7,2)", local_modification(p4, {A}).ovoid);
    const EmbeddedPair p3 = embedded_pair(share(make_space("Q+(5,2)")));
    const Subspace B = p3.chart.embed(p3.section->enumerate_ti(1).front());
    sets.emplace_back("local modification Q+(5,2)", local_modification(p3, {B}, CapPolicy::kWarn).ovoid);
  }
  {
    const auto inst = build_instance(share(make_space("W(5,2)")), {1, 2, 3});
    SearchBudget b;
    b.seconds = 3.0;
    b.nodes = 1ull << 40;
    const SearchResult r = min_generalized_ovoid(inst, b);
    if (r.best) sets.emplace_back("W(5,2) search witness", *r.best);
  }

  int checked = 0;
  for (const auto& [name, o] : sets) check_bounds(out, name, o, checked);

  int caps = 0;
  for (unsigned p : {2u, 3u}) {
    for (unsigned h : {1u, 2u}) {
      for (int e2 = 0; e2 <= 4; ++e2) {
        if (e2 % 2 == 1 && h % 2 == 1) continue;
        for (int k = 1; k <= 4; ++k) {
          for (int r = k + 1; r <= 20; ++r) {
            const BoundReport br = partial_rk_ovoid_bound(p, h, r, k, e2);
            ++caps;
            BigInt cap = br.power;
            for (int i = 1; i < k; ++i) cap *= 2;
            out.check(br.bound <= Rational(cap) && br.within_cap,
                      "cap exceeded at p=" + std::to_string(p) + " h=" + std::to_string(h) +
                          " r=" + std::to_string(r) + " k=" + std::to_string(k) + " e2=" +
                          std::to_string(e2));
          }
        }
      }
    }
  }
  out.summary = std::to_string(sets.size()) + " sets, " + std::to_string(checked) +
                " class bounds, " + std::to_string(caps) + " cap checks";
}

void threshold(Outcome& out) {
  const ThresholdReport t = nonexistence_rank_threshold(2, 1, 0, 50);
  out.check(t.r_star.has_value(), "no threshold found");
  if (!t.r_star) return;
  out.check(t.ratios.size() == 51, "window has " + std::to_string(t.ratios.size()) + " ratios");
  out.check(t.ratios_increasing, "reported ratios not increasing");
  for (int i = 0; i <= 50; ++i) {
    const int r = *t.r_star + i;
    const Rational ratio = Rational(ovoid_size(r, 1, 0, 2)) / partial_rk_ovoid_bound(2, 1, r, 1, 0).bound;
    out.check(ratio > 1, "r=" + std::to_string(r) + ": ovoid fits under the bound");
    if (i < static_cast<int>(t.ratios.size())) out.check(ratio == t.ratios[i], "ratio mismatch at r=" + std::to_string(r));
    if (i > 0) {
      const Rational prev = Rational(ovoid_size(r - 1, 1, 0, 2)) / partial_rk_ovoid_bound(2, 1, r - 1, 1, 0).bound;
      out.check(ratio > prev, "ratio not increasing at r=" + std::to_string(r));
    }
  }
  if (*t.r_star > 2) {
    const int r = *t.r_star - 1;
    out.check(Rational(ovoid_size(r, 1, 0, 2)) <= partial_rk_ovoid_bound(2, 1, r, 1, 0).bound,
              "threshold is not minimal");
  }
  out.summary = "r* = " + std::to_string(*t.r_star);
}

void homogeneous(Outcome& out) {
  SearchBudget b;
  b.seconds = 55.0;
  b.nodes = 1ull << 40;
  const SearchResult r = homogeneous_exists(share(make_space("W(5,2)")), 1, b);
  out.check(r.status == SearchStatus::kInfeasible, "status " + std::string(search_status_name(r.status)));
  out.summary = std::string(search_status_name(r.status)) + ", " + std::to_string(r.stats.nodes) + " nodes";
}

void reducibility(Outcome& out) {
  const Construction ex = replacement_example(2);
  const auto rw = reducibility_witness(ex.ovoid, ReduceMode::kReplaceable);
  out.check(rw.has_value(), "replacement example not REPLACEABLE");
  if (rw) {
    out.check(rw->replaced.size() < ex.ovoid.size(), "replacement does not shrink");
    out.check(verify(OvoidSet(ex.ovoid.space_ptr(), rw->replaced)).status == Status::kExact,
              "replaced set not EXACT");
  }
  const OvoidSet outer = classical_ovoid_qplus5(2).ovoid;
  int products = 0;
  for (InnerChoice c : {InnerChoice::kFirst, InnerChoice::kMaxOverlap}) {
    const OvoidSet p = product_ovoid(outer, search_inner(1, c)).ovoid;
    const auto w = reducibility_witness(p, ReduceMode::kPairwise);
    out.check(w.has_value(), "product not PAIRWISE-reducible");
    if (w) {
      out.check(w->members_selected.size() >= 2, "pairwise witness selects fewer than two members");
      for (const auto& m : w->members_selected) {
        out.check(is_subspace_of(p.space().field(), w->pi, m), "witness not inside a selected member");
      }
    }
    ++products;
  }
  for (unsigned q : {2u, 3u}) {
    const OvoidSet cl = classical_ovoid_qplus5(q).ovoid;
    out.check(!reducibility_witness(cl, ReduceMode::kPairwise).has_value(),
              "classical ovoid q=" + std::to_string(q) + " not IRREDUCIBLE");
  }
  out.summary = "example REPLACEABLE, " + std::to_string(products) +
                " products PAIRWISE, classical IRREDUCIBLE";
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"1", "counting oracle suite", 120, counting_suite},
      {"2", "Q+(5,q) spread construction", 30, qplus32},
      {"3", "Q-(7,2) 1-system construction", 60, msystem},
      {"4", "W(5,2) minimum generalized ovoid witness", 60, w52_witness},
      {"4-proof", "W(5,2) minimum generalized ovoid optimality", 1800, w52_proof},
      {"5", "product and quotient", 10, product_quotient},
      {"6", "matching construction", 60, matching},
      {"7", "degenerate-hyperplane fraction", 10, fractions},
      {"8", "bounds", 10, bounds},
      {"9", "non-existence threshold", 5, threshold},
      {"10", "homogeneous non-existence W(5,2) k=1", 60, homogeneous},
      {"11", "reducibility", 30, reducibility},
  };
  return all;
}

bool run(const Criterion& c) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.body(out);
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > c.limit_seconds) {
    std::ostringstream s;
    s << "runtime " << std::fixed << std::setprecision(1) << secs << " s over limit " << c.limit_seconds << " s";
    out.failures.push_back(s.str());
  }
  const bool ok = out.failures.empty();
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title;
  if (!out.summary.empty()) std::cout << " (" << out.summary << ")";
  std::cout << " [" << std::fixed << std::setprecision(2) << secs << " s]\n";
  for (const auto& f : out.failures) std::cout << "    " << f << "\n";
  std::cout.flush();
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  if (wanted.empty()) {
    for (const auto& c : criteria()) {
      if (c.id != "4-proof") wanted.push_back(c.id);
    }
  }
  bool all_ok = true;
  for (const auto& id : wanted) {
    bool found = false;
    for (const auto& c : criteria()) {
      if (c.id == id) {
        found = true;
        all_ok = run(c) && all_ok;
      }
    }
    if (!found) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
  }
  return all_ok ? 0 : 1;
}
