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

#include "polarcover/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "polarcover/error.hpp"

namespace polarcover {

namespace {

using nlohmann::json;

Construction finish(std::string name, OvoidSet ovoid, json details) {
  VerificationReport rep = verify(ovoid);
  if (rep.status != Status::kExact) {
    throw std::logic_error(name + " produced a set that is not a generalized ovoid");
  }
  details["size"] = ovoid.size();
  details["type"] = type_signature(ovoid);
  return {std::move(ovoid), {std::move(name), std::move(details), std::move(rep)}};
}

void require_exact(const OvoidSet& o, const char* what) {
  if (verify(o).status != Status::kExact) {
    throw DomainError(std::string(what) + " is not an EXACT generalized ovoid");
  }
}

// Normalized vectors of the points of S.
std::vector<Vector> points_of(const FieldTable& F, const Subspace& S) {
  std::vector<Vector> out;
  for_each_point(F, S.dim(), [&](const Vector& y) {
    Vector x = combine(F, S, y);
    normalize(F, x);
    out.push_back(std::move(x));
  });
  return out;
}

std::size_t singular_points(const PolarSpace& P, const Subspace& S) {
  std::size_t count = 0;
  for (const auto& x : points_of(P.field(), S)) count += P.is_singular(x) ? 1 : 0;
  return count;
}

Subspace point_span(const FieldTable& F, const Vector& x) {
  return span_of(F, static_cast<int>(x.size()), x);
}

// Every hyperplane of V(n,q) as the kernel of a normalized functional, in
// lex order of the functional; stops when `fn` returns true.
void for_each_hyperplane(const FieldTable& F, int n,
                         const std::function<bool(const Subspace&)>& fn) {
  bool done = false;
  for_each_point(F, n, [&](const Vector& c) {
    if (!done) done = fn(null_space(F, n, c));
  });
}

std::optional<Kind> paired_kind(Kind k) {
  switch (k) {
    case Kind::kHyperbolic: return Kind::kParabolic;
    case Kind::kHermitianOdd: return Kind::kHermitianEven;
    case Kind::kParabolic: return Kind::kElliptic;
    default: return std::nullopt;
  }
}

// Lex-first non-degenerate section of P of the given kind and rank, other
// than `avoid`.
std::optional<Section> find_section(const PolarSpace& P, Kind kind, int rank,
                                    const std::optional<Subspace>& avoid) {
  std::optional<Section> found;
  for_each_hyperplane(P.field(), P.n(), [&](const Subspace& H) {
    if (avoid && H == *avoid) return false;
    auto sec = hyperplane_section(P, H);
    if (auto* s = std::get_if<Section>(&sec)) {
      if (s->space.descriptor().kind == kind && s->space.rank() == rank) {
        found = std::move(*s);
        return true;
      }
    }
    return false;
  });
  return found;
}

json kind_census(const std::map<int, std::size_t>& counts) {
  json out = json::object();
  for (const auto& [k, v] : counts) out[std::to_string(k)] = v;
  return out;
}

}  // namespace

nlohmann::json to_json(const VerificationReport& report) {
  json out;
  out["status"] = std::string(status_name(report.status));
  out["generators_checked"] = report.generators_checked;
  json hist = json::object();
  for (const auto& [k, v] : report.histogram) hist[std::to_string(k)] = v;
  out["histogram"] = hist;
  json viol = json::array();
  for (std::size_t i = 0; i < report.violations.size() && i < 20; ++i) {
    viol.push_back({{"generator", to_text(report.violations[i].generator)},
                    {"count", report.violations[i].count}});
  }
  out["violations"] = viol;
  out["violations_total"] = report.violations.size();
  if (!report.diagnostic.empty()) out["diagnostic"] = report.diagnostic;
  return out;
}

nlohmann::json to_json(const ConstructionReport& report) {
  return {{"name", report.name}, {"details", report.details},
          {"verification", to_json(report.verification)}};
}

Construction all_generators_ovoid(SpacePtr space, const EnumerationBudget& budget) {
  auto gens = space->generators(budget);
  json d;
  d["space"] = space->descriptor().to_string();
  OvoidSet o(space, std::move(gens));
  return finish("all-generators", std::move(o), std::move(d));
}

Construction quotient_ovoid(const OvoidSet& ovoid, const std::optional<Subspace>& point) {
  const PolarSpace& P = ovoid.space();
  const FieldTable& F = P.field();
  const auto k = ovoid.homogeneous_dim();
  if (!k) throw DomainError("quotient needs a homogeneous ovoid");
  if (*k >= P.rank()) throw DomainError("quotient needs members of dimension below the rank");
  require_exact(ovoid, "input");

  auto in_member = [&](const Subspace& X) {
    return std::any_of(ovoid.members().begin(), ovoid.members().end(),
                       [&](const Subspace& m) { return is_subspace_of(F, X, m); });
  };
  Subspace pt;
  if (point) {
    if (point->ambient() != P.n() || point->dim() != 1 || !P.is_totally_isotropic(*point)) {
      throw DomainError("quotient point must be a singular point");
    }
    if (in_member(*point)) throw DomainError("point " + to_text(*point) + " lies in a member");
    pt = *point;
  } else {
    bool found = false;
    for (const auto& X : P.enumerate_ti(1)) {
      if (!in_member(X)) {
        pt = X;
        found = true;
        break;
      }
    }
    if (!found) throw DomainError("every point lies in a member; no quotient point exists");
  }

  QuotientMap qm = quotient_space(P, pt);
  const Subspace tangent = P.perp(pt);
  std::vector<Subspace> members;
  for (const auto& m : ovoid.members()) {
    if (is_subspace_of(F, m, tangent)) members.push_back(qm.project(span_sum(F, pt, m)));
  }
  const std::size_t used = members.size();
  json d;
  d["point"] = to_text(pt);
  d["base"] = qm.base().descriptor().to_string();
  d["members_in_tangent"] = used;
  OvoidSet out(share(qm.base()), std::move(members));
  if (out.size() != used) throw std::logic_error("two members project to the same subspace");
  return finish("quotient", std::move(out), std::move(d));
}

InnerFactory all_generators_inner() {
  return [](const QuotientMap& qm, const std::vector<Subspace>&) {
    auto base = share(qm.base());
    return OvoidSet(base, base->generators());
  };
}

InnerFactory embedded_inner() {
  return [](const QuotientMap& qm, const std::vector<Subspace>&) {
    return embedded_comaximal_ovoid(share(qm.base())).ovoid;
  };
}

InnerFactory search_inner(int k, InnerChoice choice, std::size_t limit,
                          const SearchBudget& budget) {
  return [=](const QuotientMap& qm, const std::vector<Subspace>& so_far) {
    auto base = share(qm.base());
    const CoverInstance inst = build_instance(base, {k});
    const auto covers =
        enumerate_exact_covers(inst, choice == InnerChoice::kFirst ? 1 : limit, budget);
    if (covers.empty()) {
      throw DomainError("no (" + std::to_string(base->rank()) + "," + std::to_string(k) +
                        ")-ovoid found in " + base->descriptor().to_string());
    }
    std::size_t pick = 0;
    if (choice == InnerChoice::kMaxOverlap) {
      const FieldTable& F = qm.base().field();
      std::set<Vector> covered;
      for (const auto& s : so_far) {
        for (auto& x : points_of(F, s)) covered.insert(std::move(x));
      }
      std::size_t best = 0;
      for (std::size_t c = 0; c < covers.size(); ++c) {
        std::size_t overlap = 0;
        for (std::size_t idx : covers[c]) {
          for (const auto& x : points_of(F, qm.lift(inst.candidates[idx]))) {
            overlap += covered.count(x);
          }
        }
        if (c == 0 || overlap > best) {
          best = overlap;
          pick = c;
        }
      }
    }
    std::vector<Subspace> members;
    for (std::size_t idx : covers[pick]) members.push_back(inst.candidates[idx]);
    return OvoidSet(base, std::move(members));
  };
}

Construction product_ovoid(const OvoidSet& outer, const InnerFactory& inner) {
  const PolarSpace& P = outer.space();
  const auto l = outer.homogeneous_dim();
  if (!l) throw DomainError("outer ovoid must be homogeneous");
  if (*l >= P.rank()) throw DomainError("outer members must have dimension below the rank");
  require_exact(outer, "outer ovoid");

  std::vector<Subspace> lifted;
  json sizes = json::array();
  for (const auto& alpha : outer.members()) {
    QuotientMap qm = quotient_space(P, alpha);
    const OvoidSet in = inner(qm, lifted);
    if (in.space().descriptor() != qm.base().descriptor() ||
        !(in.space().form() == qm.base().form())) {
      throw DomainError("inner ovoid lives in the wrong space");
    }
    if (verify(in).status != Status::kExact) {
      throw DomainError("inner ovoid at " + to_text(alpha) + " is not EXACT");
    }
    for (const auto& tau : in.members()) lifted.push_back(qm.lift(tau));
    sizes.push_back(in.size());
  }
  json d;
  d["outer_size"] = outer.size();
  d["outer_dim"] = *l;
  d["inner_sizes"] = sizes;
  d["reducible"] = true;
  OvoidSet out(outer.space_ptr(), std::move(lifted));
  return finish("product", std::move(out), std::move(d));
}

EmbeddedPair embedded_pair(SpacePtr space) {
  const auto& desc = space->descriptor();
  const auto target = paired_kind(desc.kind);
  if (!target) {
    throw DomainError("no embedded pair defined for " + desc.to_string());
  }
  if (desc.rank < 2) throw DomainError("embedded pair needs rank at least 2");
  auto sec = find_section(*space, *target, desc.rank - 1, std::nullopt);
  if (!sec) throw DomainError("no hyperplane section of the paired kind found");
  EmbeddedPair out;
  out.space = space;
  out.hyperplane = sec->chart.frame();
  out.chart = sec->chart;
  out.section = share(std::move(sec->space));
  return out;
}

namespace {

Construction embedded_from(const EmbeddedPair& pair) {
  std::vector<Subspace> members;
  for (const auto& g : pair.section->generators()) members.push_back(pair.chart.embed(g));
  json d;
  d["hyperplane"] = to_text(pair.hyperplane);
  d["section"] = pair.section->descriptor().to_string();
  return finish("embedded", OvoidSet(pair.space, std::move(members)), std::move(d));
}

}  // namespace

Construction embedded_comaximal_ovoid(SpacePtr space) {
  return embedded_from(embedded_pair(std::move(space)));
}

Construction local_modification(const EmbeddedPair& pair, const std::vector<Subspace>& R,
                                CapPolicy policy) {
  const PolarSpace& P = *pair.space;
  const FieldTable& F = P.field();
  const int r = P.rank();
  if (r < 3) throw DomainError("local modification needs rank at least 3");

  // |R| <= q^{r+e-1}/5, squared to stay integral for half-integral e.
  const BigInt lhs = BigInt(5 * R.size()) * BigInt(5 * R.size());
  const BigInt rhs = HalfExpInt(P.q()).pow(2 * r + P.e2() - 2) *
                     HalfExpInt(P.q()).pow(2 * r + P.e2() - 2);
  const bool over = lhs > rhs;
  if (over && policy == CapPolicy::kEnforce) {
    throw DomainError("partial ovoid of size " + std::to_string(R.size()) +
                      " exceeds the cap q^(r+e-1)/5");
  }

  std::vector<Subspace> in_section;
  for (const auto& pt : R) {
    if (pt.ambient() != P.n() || pt.dim() != 1) throw DomainError("R must consist of points");
    if (!is_subspace_of(F, pt, pair.hyperplane) || !P.is_totally_isotropic(pt)) {
      throw DomainError("point " + to_text(pt) + " is not a point of the section");
    }
    in_section.push_back(pair.chart.coords(pt));
  }
  if (verify(OvoidSet(pair.section, in_section), Rule::kPartial).status == Status::kInvalid) {
    throw DomainError("R is not a partial ovoid of the section");
  }

  const Construction base = embedded_from(pair);
  std::vector<Subspace> members = base.ovoid.members();
  json per_point = json::array();
  for (const auto& pt : R) {
    QuotientMap qm = quotient_space(P, pt);
    const Subspace old_h = qm.project(intersect(F, pair.hyperplane, P.perp(pt)));
    auto alt = find_section(qm.base(), pair.section->descriptor().kind, r - 2, old_h);
    if (!alt) throw DomainError("no alternative section in the quotient of " + to_text(pt));
    const auto before = members.size();
    std::erase_if(members, [&](const Subspace& m) { return is_subspace_of(F, pt, m); });
    const auto removed = before - members.size();
    const auto gens = alt->space.generators();
    for (const auto& g : gens) members.push_back(qm.lift(alt->chart.embed(g)));
    per_point.push_back({{"point", to_text(pt)},
                         {"replaced", removed},
                         {"added", gens.size()},
                         {"new_section", to_text(alt->chart.frame())}});
  }
  json d;
  d["hyperplane"] = to_text(pair.hyperplane);
  d["section"] = pair.section->descriptor().to_string();
  d["points"] = per_point;
  d["cap_exceeded"] = over;
  OvoidSet out(pair.space, std::move(members));
  d["differs_from_embedded"] = out.members() != base.ovoid.members();
  return finish("local-modification", std::move(out), std::move(d));
}

MatchingGraph build_matching_graph(SpacePtr space) {
  if (space->descriptor().kind != Kind::kHyperbolic) {
    throw DomainError("matching graph needs a hyperbolic quadric");
  }
  const FieldTable& F = space->field();
  const int r = space->rank();
  const auto gens = space->generators();
  MatchingGraph G;
  G.space = space;
  for (const auto& g : gens) {
    const int meet = intersect(F, g, gens.front()).dim();
    ((r - meet) % 2 == 0 ? G.left : G.right).push_back(g);
  }
  if (G.left.size() != G.right.size()) throw std::logic_error("unbalanced generator classes");
  G.v = G.left.size();
  G.adjacency.resize(G.v);
  std::vector<std::size_t> right_deg(G.v, 0);
  for (std::size_t i = 0; i < G.v; ++i) {
    for (std::size_t j = 0; j < G.v; ++j) {
      if (intersect(F, G.left[i], G.right[j]).dim() == r - 1) {
        G.adjacency[i].push_back(j);
        ++right_deg[j];
      }
    }
  }
  G.deg = G.v ? G.adjacency[0].size() : 0;
  for (std::size_t i = 0; i < G.v; ++i) {
    if (G.adjacency[i].size() != G.deg || right_deg[i] != G.deg) {
      throw std::logic_error("matching graph is not regular");
    }
  }
  return G;
}

Construction matching_ovoid(const MatchingGraph& G) {
  std::vector<std::ptrdiff_t> match_right(G.v, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t w : G.adjacency[u]) {
      if (seen[w]) continue;
      seen[w] = 1;
      if (match_right[w] < 0 || augment(static_cast<std::size_t>(match_right[w]))) {
        match_right[w] = static_cast<std::ptrdiff_t>(u);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < G.v; ++u) {
    seen.assign(G.v, 0);
    if (!augment(u)) throw std::logic_error("no perfect matching");
  }
  const FieldTable& F = G.space->field();
  std::vector<Subspace> members;
  json pairs = json::array();
  for (std::size_t w = 0; w < G.v; ++w) {
    const auto u = static_cast<std::size_t>(match_right[w]);
    members.push_back(intersect(F, G.left[u], G.right[w]));
    pairs.push_back({u, w});
  }
  json d;
  d["v"] = G.v;
  d["deg"] = G.deg;
  d["pairs"] = pairs;
  return finish("matching", OvoidSet(G.space, std::move(members)), std::move(d));
}

BigInt count_perfect_matchings(const MatchingGraph& G) {
  const std::size_t n = G.v;
  if (n > 20) throw DomainError("permanent limited to v <= 20");
  if (n == 0) return 1;
  std::vector<std::uint32_t> row_mask(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : G.adjacency[i]) row_mask[i] |= std::uint32_t{1} << j;
  }
  // Ryser: perm = sum over column sets S of (-1)^{n-|S|} prod_i |row_i meet S|.
  __int128 total = 0;
  for (std::uint32_t S = 1; S < (std::uint32_t{1} << n); ++S) {
    __int128 prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) {
      prod *= __builtin_popcount(row_mask[i] & S);
    }
    const bool neg = (n - static_cast<std::size_t>(__builtin_popcount(S))) % 2 == 1;
    total += neg ? -prod : prod;
  }
  const bool negative = total < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-total)
                                   : static_cast<unsigned __int128>(total);
  BigInt out = BigInt(static_cast<std::uint64_t>(mag >> 64));
  out <<= 64;
  out += BigInt(static_cast<std::uint64_t>(mag));
  return negative ? BigInt(-out) : out;
}

Subspace exterior_line(const PolarSpace& P) {
  for (const auto& L : enumerate_subspaces(P.field(), P.n(), 2)) {
    if (singular_points(P, L) == 0) return L;
  }
  throw DomainError("no line without singular points in " + P.descriptor().to_string());
}

namespace {

SpacePtr qplus5(unsigned q) {
  return share(PolarSpace::standard({Kind::kHyperbolic, 3, q}));
}

}  // namespace

Construction classical_ovoid_qplus5(unsigned q) {
  const SpacePtr P = qplus5(q);
  const FieldTable& F = P->field();
  const Subspace ell = exterior_line(*P);
  const Subspace L = P->perp(ell);
  std::vector<Subspace> members;
  for (const auto& x : points_of(F, L)) {
    if (P->is_singular(x)) members.push_back(point_span(F, x));
  }
  json d;
  d["line"] = to_text(ell);
  d["solid"] = to_text(L);
  return finish("classical-ovoid", OvoidSet(P, std::move(members)), std::move(d));
}

Construction qplus32_ovoid(unsigned q) {
  const SpacePtr P = qplus5(q);
  const FieldTable& F = P->field();
  const Subspace ell = exterior_line(*P);
  const Subspace L = P->perp(ell);
  const Chart chartL(P->field_ptr(), L);
  const FormClass cl = classify_form(F, P->form().restrict_to(F, chartL));

  // GF(q^2)-structure on V(4,q): J = diag(C, C), C the companion matrix of
  // t^2 + t + c, irreducible for the elliptic constant c.
  const Elem c = elliptic_constant(F);
  auto J = [&](const Vector& y) {
    Vector z(4);
    for (int b = 0; b < 4; b += 2) {
      z[b] = y[b + 1];
      z[b + 1] = F.sub(F.neg(F.mul(c, y[b])), y[b + 1]);
    }
    return z;
  };
  std::set<Subspace> spread_set;
  for_each_point(F, 4, [&](const Vector& y) {
    spread_set.insert(rref_canonical(F, 4, {y, J(y)}));
  });
  const std::uint64_t qq = static_cast<std::uint64_t>(q) * q;

  bool plane_lemma = true;
  std::size_t planes = 0;
  for (const auto& x : points_of(F, L)) {
    const Subspace plane = extend(F, ell, x);
    const std::size_t s = singular_points(*P, plane);
    plane_lemma = plane_lemma && s == (P->is_singular(x) ? 1u : q + 1u);
    ++planes;
  }

  std::vector<Subspace> members;
  std::map<std::string, std::set<std::size_t>> class_sizes;
  std::map<std::string, std::size_t> class_count;
  bool solid_lemma = true;
  json lines = json::array();
  const auto local_lines = enumerate_subspaces(F, 4, 2);
  for (const auto& m_local : spread_set) {
    const Subspace m = chartL.embed(m_local);
    const std::size_t s = singular_points(*P, m);
    const std::string cls = s == 1 ? "tangent" : s == 2 ? "bisecant" : "external";
    const Subspace solid = span_sum(F, m, ell);
    const Chart chartT(P->field_ptr(), solid);
    std::vector<Subspace> Fm;
    for (const auto& sub : local_lines) {
      Subspace line = chartT.embed(sub);
      if (P->is_totally_isotropic(line)) Fm.push_back(std::move(line));
    }
    const FormClass sc = classify_form(F, P->form().restrict_to(F, chartT));
    bool ok = false;
    if (cls == "tangent") {
      Subspace tp;
      for (const auto& x : points_of(F, m)) {
        if (P->is_singular(x)) tp = point_span(F, x);
      }
      ok = sc.degenerate && chartT.embed(sc.radical) == tp && Fm.size() == q + 1u;
    } else if (cls == "bisecant") {
      ok = !sc.degenerate && sc.descriptor.kind == Kind::kElliptic &&
           sc.descriptor.rank == 1 && Fm.empty();
    } else {
      ok = !sc.degenerate && sc.descriptor.kind == Kind::kHyperbolic &&
           sc.descriptor.rank == 2 && Fm.size() == 2u * q + 2u;
    }
    solid_lemma = solid_lemma && ok;
    class_sizes[cls].insert(Fm.size());
    ++class_count[cls];
    lines.push_back({{"line", to_text(m)}, {"class", cls}, {"members", Fm.size()}});
    members.insert(members.end(), Fm.begin(), Fm.end());
  }
  const std::size_t alpha = class_count["tangent"];
  const std::size_t bis = class_count["bisecant"];
  const std::size_t ext = class_count["external"];

  json d;
  d["q"] = q;
  d["line"] = to_text(ell);
  d["perp"] = to_text(L);
  d["perp_section"] = cl.degenerate ? std::string("degenerate") : cl.descriptor.to_string();
  d["spread_size"] = spread_set.size();
  d["spread_is_spread"] = spread_set.size() == qq + 1;
  d["alpha"] = alpha;
  d["bisecants"] = bis;
  d["external"] = ext;
  d["spread_accounting"] = alpha + 2 * bis == qq + 1 && bis == ext;
  json cs = json::object();
  for (const auto& [k, v] : class_sizes) cs[k] = std::vector<std::size_t>(v.begin(), v.end());
  d["class_sizes"] = cs;
  d["plane_lemma"] = plane_lemma;
  d["planes_checked"] = planes;
  d["solid_lemma"] = solid_lemma;
  d["spread"] = lines;
  return finish("qplus32", OvoidSet(P, std::move(members)), std::move(d));
}

Construction msystem32_ovoid_q2() {
  const PolarSpace Q4 = PolarSpace::standard({Kind::kElliptic, 1, 4});
  const FieldTable& F4 = Q4.field();
  const FieldPtr F2p = make_field(2, 1);
  const FieldTable& F2 = *F2p;
  const Elem omega = 2;

  // V(4,4) -> V(8,2): coordinate i splits as a_i + b_i omega at 2i, 2i+1.
  auto reduce = [&](const Vector& x) {
    Vector v(8, 0);
    for (int i = 0; i < 4; ++i) {
      const auto dg = F4.digits(x[static_cast<std::size_t>(i)]);
      v[static_cast<std::size_t>(2 * i)] = dg.size() > 0 ? dg[0] : 0;
      v[static_cast<std::size_t>(2 * i + 1)] = dg.size() > 1 ? dg[1] : 0;
    }
    return v;
  };
  auto lift = [&](std::span<const Elem> v) {
    Vector x(4);
    for (int i = 0; i < 4; ++i) {
      x[static_cast<std::size_t>(i)] = F4.from_digits(
          {v[static_cast<std::size_t>(2 * i)], v[static_cast<std::size_t>(2 * i + 1)]});
    }
    return x;
  };

  std::optional<Form> form;
  Elem lambda = 0;
  for (Elem lam = 1; lam < 4 && !form; ++lam) {
    auto Q2 = [&](const Vector& v) {
      return F4.trace(F4.mul(lam, Q4.eval_quadratic(lift(v))));
    };
    std::vector<Elem> coeffs(64, 0);
    for (int i = 0; i < 8; ++i) {
      Vector ei(8, 0);
      ei[static_cast<std::size_t>(i)] = 1;
      coeffs[static_cast<std::size_t>(i * 8 + i)] = Q2(ei);
      for (int j = i + 1; j < 8; ++j) {
        Vector ej(8, 0), eij = ei;
        ej[static_cast<std::size_t>(j)] = 1;
        eij[static_cast<std::size_t>(j)] = 1;
        coeffs[static_cast<std::size_t>(i * 8 + j)] =
            F2.add(Q2(eij), F2.add(Q2(ei), Q2(ej)));
      }
    }
    Form f(FormType::kQuadratic, 8, std::move(coeffs));
    const FormClass fc = classify_form(F2, f);
    if (!fc.degenerate && fc.descriptor.kind == Kind::kElliptic && fc.descriptor.rank == 3) {
      form = std::move(f);
      lambda = lam;
    }
  }
  if (!form) throw DomainError("no trace form of Q-(3,4) is elliptic");
  const SpacePtr S = share(PolarSpace(F2p, {Kind::kElliptic, 3, 2}, *form));

  std::set<Subspace> x_lines;
  std::set<Subspace> x_points;
  for (const auto& pt : Q4.enumerate_ti(1)) {
    const Vector x(pt.row(0).begin(), pt.row(0).end());
    Vector wx(4);
    for (int i = 0; i < 4; ++i) {
      wx[static_cast<std::size_t>(i)] = F4.mul(omega, x[static_cast<std::size_t>(i)]);
    }
    const Subspace line = rref_canonical(F2, 8, {reduce(x), reduce(wx)});
    if (!S->is_totally_isotropic(line)) throw std::logic_error("reduced point is not a line");
    x_lines.insert(line);
    for (const auto& p : points_of(F2, line)) x_points.insert(point_span(F2, p));
  }

  std::map<int, std::size_t> census;
  std::vector<Subspace> members;
  for (const auto& line : S->enumerate_ti(2)) {
    int meet = 0;
    for (const auto& p : points_of(F2, line)) meet += x_points.count(point_span(F2, p)) ? 1 : 0;
    ++census[meet];
    if (meet == 3 || meet == 0) members.push_back(line);
  }
  std::size_t x_in_members = 0;
  for (const auto& m : members) x_in_members += x_lines.count(m);

  OvoidSet reduced(S, members);
  const VerificationReport rrep = verify(reduced);
  json d;
  d["lambda"] = lambda;
  d["x_lines"] = x_lines.size();
  d["x_points"] = x_points.size();
  d["census"] = kind_census(census);
  d["x_lines_in_result"] = x_in_members;
  d["reduced_status"] = std::string(status_name(rrep.status));
  return finish("msystem32", to_standard_model(reduced), std::move(d));
}

Construction replacement_example(unsigned q) {
  const Construction classical = classical_ovoid_qplus5(q);
  const OvoidSet& O = classical.ovoid;
  const PolarSpace& P = O.space();
  const Subspace pt = O.members().front();
  QuotientMap qm = quotient_space(P, pt);
  const OvoidSet inner = embedded_comaximal_ovoid(share(qm.base())).ovoid;
  std::vector<Subspace> members(O.members().begin() + 1, O.members().end());
  for (const auto& tau : inner.members()) members.push_back(qm.lift(tau));
  json d;
  d["replaced_point"] = to_text(pt);
  d["lines"] = inner.size();
  return finish("replacement", OvoidSet(O.space_ptr(), std::move(members)), std::move(d));
}

}  // namespace polarcover
