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

#include "polarcover/cli.hpp"

#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <fstream>
#include <sstream>

#include "polarcover/constructions.hpp"
#include "polarcover/counting.hpp"
#include "polarcover/error.hpp"
#include "polarcover/ovoid.hpp"
#include "polarcover/search.hpp"

namespace polarcover {

namespace {

using nlohmann::json;

struct Globals {
  double seconds = 60.0;
  std::uint64_t nodes = 10'000'000;
  bool deterministic = false;
  int threads = 1;
  std::string out;
  std::string format = "text";
};

std::string big(const BigInt& x) { return x.str(); }

std::string e_text(int e2) {
  return e2 % 2 == 0 ? std::to_string(e2 / 2) : std::to_string(e2) + "/2";
}

void flatten(std::ostream& os, const std::string& prefix, const json& j) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(os, prefix.empty() ? k : prefix + "." + k, v);
    return;
  }
  os << prefix << ": ";
  if (j.is_string()) {
    os << j.get<std::string>();
  } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) {
               return x.is_primitive();
             })) {
    bool first = true;
    for (const auto& x : j) {
      os << (first ? "" : " ") << (x.is_string() ? x.get<std::string>() : x.dump());
      first = false;
    }
  } else {
    os << j.dump();
  }
  os << "\n";
}

void emit(std::ostream& out, const Globals& g, const json& j) {
  if (g.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    flatten(out, "", j);
  }
}

SearchBudget search_budget(const Globals& g) {
  SearchBudget b;
  b.seconds = g.seconds;
  b.nodes = g.nodes;
  b.deterministic = g.deterministic;
  b.threads = g.deterministic ? 1 : std::max(1, g.threads);
  return b;
}

json search_json(const SearchResult& r, const Globals& g) {
  json j;
  j["status"] = std::string(search_status_name(r.status));
  j["size"] = r.size;
  j["lower_bound_proved"] = r.lower_bound_proved;
  j["stats"]["nodes"] = r.stats.nodes;
  j["stats"]["peak_frontier"] = r.stats.peak_frontier;
  if (!g.deterministic) j["stats"]["seconds"] = r.stats.seconds;
  if (r.best) j["type"] = type_signature(*r.best);
  return j;
}

int search_exit(SearchStatus s) {
  return s == SearchStatus::kBudgetExhausted ? kExitBudget : kExitOk;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParseError("bad dimension list '" + text + "'");
    }
  }
  if (dims.empty()) throw ParseError("empty dimension list");
  return dims;
}

void split_q(unsigned q, unsigned& p, unsigned& h) {
  if (!prime_power(q, p, h)) throw DomainError(std::to_string(q) + " is not a prime power");
}

SpacePtr load_space(const std::string& descriptor) {
  return share(PolarSpace::make(descriptor));
}

void require_descriptor(const SpacePtr& S, Kind kind, int rank, std::optional<unsigned> q,
                        const std::string& what) {
  const auto& d = S->descriptor();
  if (d.kind != kind || d.rank != rank || (q && d.q != *q)) {
    throw DomainError(what + " is not defined for " + d.to_string());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"polarcover: generalized ovoids of finite classical polar spaces", "polarcover"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--budget-seconds", g.seconds, "Wall-clock budget for searches")
      ->capture_default_str();
  app.add_option("--budget-nodes", g.nodes, "Node budget for searches")->capture_default_str();
  app.add_flag("--deterministic", g.deterministic, "Single-threaded, reproducible output");
  app.add_option("--threads", g.threads, "Search worker threads")
      ->envname("POLARCOVER_THREADS")
      ->capture_default_str();
  app.add_option("--out", g.out, "Write the resulting ovoid or list to this file");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::function<int()> action;
  std::string descriptor;
  int dim = 0;

  // space info
  auto* space = app.add_subcommand("space", "Polar space information");
  space->require_subcommand(1);
  auto* info = space->add_subcommand("info", "Parameters and counts");
  info->add_option("descriptor", descriptor, "e.g. W(5,2)")->required();
  info->callback([&] {
    action = [&]() -> int {
      const auto S = load_space(descriptor);
      const auto& d = S->descriptor();
      json j;
      j["descriptor"] = d.to_string();
      j["kind"] = std::string(kind_name(d.kind));
      j["n"] = d.n();
      j["rank"] = d.rank;
      j["e"] = e_text(d.e2());
      j["q"] = d.q;
      j["points"] = big(count_ti(d.rank, 1, d.e2(), d.q));
      j["generators"] = big(count_ti(d.rank, d.rank, d.e2(), d.q));
      emit(out, g, j);
      return kExitOk;
    };
  });

  // count
  auto* count = app.add_subcommand("count", "Number of totally isotropic k-spaces");
  count->add_option("descriptor", descriptor)->required();
  count->add_option("--dim", dim, "k; all k when omitted");
  count->callback([&] {
    action = [&]() -> int {
      const auto d = SpaceDescriptor::parse(descriptor);
      if (dim != 0) {
        if (dim < 1 || dim > d.rank) throw DomainError("dimension must lie in [1, rank]");
        const BigInt c = count_ti(d.rank, dim, d.e2(), d.q);
        if (g.format == "json") {
          emit(out, g, json{{"descriptor", d.to_string()}, {"dim", dim}, {"count", big(c)}});
        } else {
          out << c << "\n";
        }
        return kExitOk;
      }
      json j;
      j["descriptor"] = d.to_string();
      for (int k = 1; k <= d.rank; ++k) {
        j["count"][std::to_string(k)] = big(count_ti(d.rank, k, d.e2(), d.q));
      }
      emit(out, g, j);
      return kExitOk;
    };
  });

  // bound
  unsigned p = 0, h = 1, fq = 0;
  int n = 0, r = 0, k = 0, e2 = 0, v = 0, deg = 0, window = 50;
  auto* bound = app.add_subcommand("bound", "Upper bounds on partial ovoids and matchings");
  bound->require_subcommand(1);
  auto* bm = bound->add_subcommand("bm", "Blokhuis-Moorhouse bound for partial ovoids in V(n,p^h)");
  bm->add_option("--q", fq, "field order p^h")->required();
  bm->add_option("--n", n)->required();
  bm->callback([&] {
    action = [&]() -> int {
      split_q(fq, p, h);
      if (n < 2) throw DomainError("need n >= 2");
      const BmBound b = bm_bound(p, h, n);
      emit(out, g,
           json{{"p", p}, {"h", h}, {"n", n}, {"strong", big(b.strong)}, {"weak", big(b.weak)},
                {"formula", "C(p+n-2,p-1)^h + 1"}});
      return kExitOk;
    };
  });
  auto* rk = bound->add_subcommand("rk", "Bound on partial (r,k)-ovoids");
  rk->add_option("--q", fq, "field order p^h")->required();
  rk->add_option("--r", r)->required();
  rk->add_option("--k", k)->required();
  rk->add_option("--e2", e2, "twice the parameter e")->required();
  rk->callback([&] {
    action = [&]() -> int {
      split_q(fq, p, h);
      const BoundReport b = partial_rk_ovoid_bound(p, h, r, k, e2);
      emit(out, g,
           json{{"formula", b.formula},
                {"p", b.p},
                {"h", b.h},
                {"q", b.q},
                {"r", b.r},
                {"k", b.k},
                {"e", e_text(b.e2)},
                {"product", to_text(b.product)},
                {"power", big(b.power)},
                {"bound", to_text(b.bound)},
                {"bound_decimal", to_decimal(b.bound)},
                {"bound_floor", big(b.bound_floor)},
                {"cap", big(b.cap)},
                {"within_cap", b.within_cap}});
      return kExitOk;
    };
  });
  auto* schr = bound->add_subcommand("schrijver", "Lower bound on perfect matchings");
  schr->add_option("--v", v)->required();
  schr->add_option("--deg", deg)->required();
  schr->callback([&] {
    action = [&]() -> int {
      if (v < 1 || deg < 2) throw DomainError("need v >= 1 and deg >= 2");
      const SchrijverBound b = schrijver_bound(v, deg);
      emit(out, g,
           json{{"v", v},
                {"deg", deg},
                {"value", to_text(b.value)},
                {"decimal", to_decimal(b.value)},
                {"floor", big(b.floor)},
                {"formula", "((deg-1)^(deg-1) / deg^(deg-2))^v"}});
      return kExitOk;
    };
  });

  // threshold
  auto* thr = app.add_subcommand("threshold", "Rank beyond which (r,k)-ovoids cannot exist");
  thr->add_option("--p", p)->required();
  thr->add_option("--k", k)->required();
  thr->add_option("--e2", e2)->required();
  thr->add_option("--window", window)->capture_default_str();
  thr->callback([&] {
    action = [&]() -> int {
      if (!is_prime(p) || k < 1 || e2 < 0 || e2 > 4 || window < 1) {
        throw DomainError("need p prime, k >= 1, 0 <= e2 <= 4, window >= 1");
      }
      const ThresholdReport t = nonexistence_rank_threshold(p, k, e2, window);
      json j{{"p", t.p}, {"k", t.k}, {"e", e_text(t.e2)}, {"window", t.window},
             {"ratios_increasing", t.ratios_increasing}};
      if (t.r_star) {
        j["r_star"] = *t.r_star;
        j["first_ratio"] = to_decimal(t.ratios.front());
        j["last_ratio"] = to_decimal(t.ratios.back());
      } else {
        j["r_star"] = nullptr;
      }
      emit(out, g, j);
      return t.r_star ? kExitOk : kExitDomain;
    };
  });

  // enumerate
  auto* en = app.add_subcommand("enumerate", "List the totally isotropic k-spaces");
  en->add_option("descriptor", descriptor)->required();
  en->add_option("--dim", dim)->required();
  en->callback([&] {
    action = [&]() -> int {
      const auto S = load_space(descriptor);
      if (dim < 1 || dim > S->rank()) throw DomainError("dimension must lie in [1, rank]");
      const auto list = S->enumerate_ti(dim);
      std::ostringstream body;
      if (g.format == "json") {
        json arr = json::array();
        for (const auto& s : list) arr.push_back(to_text(s));
        body << json{{"descriptor", S->descriptor().to_string()}, {"dim", dim},
                     {"count", list.size()}, {"subspaces", arr}}
                    .dump(2)
             << "\n";
      } else {
        for (const auto& s : list) body << to_text(s) << "\n";
      }
      if (g.out.empty()) {
        out << body.str();
      } else {
        std::ofstream f(g.out);
        if (!f) throw DomainError("cannot write " + g.out);
        f << body.str();
        out << list.size() << "\n";
      }
      return kExitOk;
    };
  });

  // ovoid
  std::string file;
  bool partial = false;
  std::string mode = "pairwise";
  auto* ov = app.add_subcommand("ovoid", "Check ovoid files");
  ov->require_subcommand(1);
  auto* ver = ov->add_subcommand("verify", "Check that every generator contains one member");
  ver->add_option("file", file)->required();
  ver->add_flag("--partial", partial, "Only require at most one member per generator");
  ver->callback([&] {
    action = [&]() -> int {
      const OvoidSet o = read_ovoid_file(file);
      const VerificationReport rep = verify(o, partial ? Rule::kPartial : Rule::kExact);
      json j = to_json(rep);
      j["space"] = o.space().descriptor().to_string();
      j["size"] = o.size();
      j["type"] = type_signature(o);
      emit(out, g, j);
      const bool ok = partial ? rep.status != Status::kInvalid : rep.status == Status::kExact;
      return ok ? kExitOk : kExitVerification;
    };
  });
  auto* typ = ov->add_subcommand("type", "Type signature of an ovoid file");
  typ->add_option("file", file)->required();
  typ->callback([&] {
    action = [&]() -> int {
      const OvoidSet o = read_ovoid_file(file);
      if (g.format == "json") {
        emit(out, g, json{{"size", o.size()}, {"type", type_signature(o)}});
      } else {
        out << type_signature(o) << "\n";
      }
      return kExitOk;
    };
  });
  auto* red = ov->add_subcommand("reduce", "Reducibility witness");
  red->add_option("file", file)->required();
  red->add_option("--mode", mode)
      ->check(CLI::IsMember({"pairwise", "replaceable"}))
      ->capture_default_str();
  red->callback([&] {
    action = [&]() -> int {
      const OvoidSet o = read_ovoid_file(file);
      if (verify(o).status != Status::kExact) {
        err << "error: verification: input is not an EXACT generalized ovoid\n";
        return kExitVerification;
      }
      const auto w = reducibility_witness(
          o, mode == "pairwise" ? ReduceMode::kPairwise : ReduceMode::kReplaceable);
      json j;
      j["mode"] = mode;
      if (!w) {
        j["result"] = "IRREDUCIBLE";
      } else {
        j["result"] = mode == "pairwise" ? "PAIRWISE" : "REPLACEABLE";
        j["pi"] = to_text(w->pi);
        j["members_selected"] = w->members_selected.size();
        if (mode == "replaceable") {
          j["replaced_size"] = w->replaced.size();
          j["replaced_type"] = type_signature(w->replaced);
        }
      }
      emit(out, g, j);
      return kExitOk;
    };
  });

  // construct
  std::string cname, report, outer_file, inner = "max-overlap", ovoid_file, point, points,
                                          cap = "enforce";
  int inner_k = 1;
  auto* con = app.add_subcommand("construct", "Explicit generalized ovoids");
  con->add_option("construction", cname)
      ->required()
      ->check(CLI::IsMember({"all-generators", "embedded", "product", "quotient", "matching",
                             "qplus32", "msystem32", "classical", "replacement", "local"}));
  con->add_option("descriptor", descriptor)->required();
  con->add_option("--report", report, "Print the full report")->check(CLI::IsMember({"json"}));
  con->add_option("--outer", outer_file, "product: outer ovoid file");
  con->add_option("--inner", inner, "product: inner choice")
      ->check(CLI::IsMember({"first", "max-overlap", "embedded", "all-generators"}))
      ->capture_default_str();
  con->add_option("--k", inner_k, "product: dimension of the inner members")
      ->capture_default_str();
  con->add_option("--ovoid", ovoid_file, "quotient: input ovoid file");
  con->add_option("--point", point, "quotient: point in text form");
  con->add_option("--points", points, "local: points of the section, ';'-separated");
  con->add_option("--cap", cap, "local: cap policy")
      ->check(CLI::IsMember({"enforce", "warn"}))
      ->capture_default_str();
  con->callback([&] {
    action = [&]() -> int {
      const auto S = load_space(descriptor);
      const unsigned q = S->q();
      std::optional<Construction> c;
      if (cname == "all-generators") {
        c = all_generators_ovoid(S);
      } else if (cname == "embedded") {
        c = embedded_comaximal_ovoid(S);
      } else if (cname == "product") {
        OvoidSet outer;
        if (!outer_file.empty()) {
          outer = read_ovoid_file(outer_file, S->descriptor());
        } else {
          require_descriptor(S, Kind::kHyperbolic, 3, std::nullopt, "product without --outer");
          outer = classical_ovoid_qplus5(q).ovoid;
        }
        InnerFactory f;
        if (inner == "embedded") f = embedded_inner();
        else if (inner == "all-generators") f = all_generators_inner();
        else f = search_inner(inner_k, inner == "first" ? InnerChoice::kFirst
                                                        : InnerChoice::kMaxOverlap,
                              2000, search_budget(g));
        c = product_ovoid(outer, f);
      } else if (cname == "quotient") {
        if (ovoid_file.empty()) throw DomainError("quotient needs --ovoid");
        const OvoidSet o = read_ovoid_file(ovoid_file, S->descriptor());
        std::optional<Subspace> pt;
        if (!point.empty()) pt = subspace_from_text(S->field(), S->n(), point);
        c = quotient_ovoid(o, pt);
      } else if (cname == "matching") {
        c = matching_ovoid(build_matching_graph(S));
      } else if (cname == "qplus32") {
        require_descriptor(S, Kind::kHyperbolic, 3, std::nullopt, "qplus32");
        c = qplus32_ovoid(q);
      } else if (cname == "msystem32") {
        require_descriptor(S, Kind::kElliptic, 3, 2u, "msystem32");
        c = msystem32_ovoid_q2();
      } else if (cname == "classical") {
        require_descriptor(S, Kind::kHyperbolic, 3, std::nullopt, "classical");
        c = classical_ovoid_qplus5(q);
      } else if (cname == "replacement") {
        require_descriptor(S, Kind::kHyperbolic, 3, std::nullopt, "replacement");
        c = replacement_example(q);
      } else {
        const EmbeddedPair pair = embedded_pair(S);
        std::vector<Subspace> R;
        std::stringstream ss(points);
        std::string item;
        while (std::getline(ss, item, ';')) {
          if (!item.empty()) R.push_back(subspace_from_text(S->field(), S->n(), item));
        }
        c = local_modification(pair, R,
                               cap == "warn" ? CapPolicy::kWarn : CapPolicy::kEnforce);
      }
      if (!g.out.empty()) write_ovoid_file(g.out, c->ovoid);
      if (report == "json") {
        out << to_json(c->report).dump(2) << "\n";
      } else {
        json j = c->report.details;
        j["name"] = c->report.name;
        j["status"] = std::string(status_name(c->report.verification.status));
        j.erase("spread");
        j.erase("pairs");
        emit(out, g, j);
      }
      return kExitOk;
    };
  });

  // search
  std::string dims_text, warm;
  auto* se = app.add_subcommand("search", "Branch and bound over exact covers");
  se->require_subcommand(1);
  auto* smin = se->add_subcommand("min", "Minimum generalized ovoid");
  smin->add_option("descriptor", descriptor)->required();
  smin->add_option("--dims", dims_text, "Allowed member dimensions, e.g. 1,2,3");
  smin->callback([&] {
    action = [&]() -> int {
      const auto S = load_space(descriptor);
      std::vector<int> dims;
      if (dims_text.empty()) {
        for (int d = 1; d <= S->rank(); ++d) dims.push_back(d);
      } else {
        dims = parse_dims(dims_text);
      }
      const CoverInstance inst = build_instance(S, dims);
      const SearchResult res = min_generalized_ovoid(inst, search_budget(g));
      if (res.best && !g.out.empty()) write_ovoid_file(g.out, *res.best);
      emit(out, g, search_json(res, g));
      return search_exit(res.status);
    };
  });
  auto* shom = se->add_subcommand("homogeneous", "Existence of an (r,k)-ovoid");
  shom->add_option("descriptor", descriptor)->required();
  shom->add_option("--k", k)->required();
  shom->add_option("--warm-start", warm, "Ovoid file to try first");
  shom->callback([&] {
    action = [&]() -> int {
      const auto S = load_space(descriptor);
      std::optional<OvoidSet> ws;
      if (!warm.empty()) ws = read_ovoid_file(warm, S->descriptor());
      const SearchResult res = homogeneous_exists(S, k, search_budget(g), ws);
      if (res.best && !g.out.empty()) write_ovoid_file(g.out, *res.best);
      emit(out, g, search_json(res, g));
      return search_exit(res.status);
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitDomain;
  }
  try {
    if (!action) return kExitDomain;
    return action();
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << "\n";
    return kExitDomain;
  } catch (const BudgetExceeded& e) {
    err << "error: budget: " << e.what() << "\n";
    return kExitBudget;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace polarcover
