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

#include "polarcover/ovoid.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "polarcover/counting.hpp"
#include "polarcover/error.hpp"

namespace polarcover {

OvoidSet::OvoidSet(SpacePtr space, std::vector<Subspace> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) throw DomainError("ovoid without a space");
  for (const auto& m : members_) {
    if (m.ambient() != space_->n()) throw DomainError("member has the wrong ambient dimension");
    if (m.is_trivial()) throw DomainError("the trivial subspace cannot be a member");
    if (!space_->is_totally_isotropic(m)) {
      throw DomainError("member " + to_text(m) + " is not totally isotropic");
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

std::map<int, std::size_t> OvoidSet::dimension_counts() const {
  std::map<int, std::size_t> out;
  for (const auto& m : members_) ++out[m.dim()];
  return out;
}

std::optional<int> OvoidSet::homogeneous_dim() const {
  const auto counts = dimension_counts();
  if (counts.size() != 1) return std::nullopt;
  return counts.begin()->first;
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kExact: return "EXACT";
    case Status::kPartial: return "PARTIAL";
    case Status::kInvalid: return "INVALID";
  }
  return "?";
}

namespace {

std::vector<int> cover_counts(const OvoidSet& ovoid, const std::vector<Subspace>& gens,
                              const EnumerationBudget& budget) {
  const PolarSpace& P = ovoid.space();
  std::vector<int> counts(gens.size(), 0);
  auto bump = [&](const Subspace& g) {
    const auto it = std::lower_bound(gens.begin(), gens.end(), g);
    if (it == gens.end() || *it != g) throw std::logic_error("generator not enumerated");
    ++counts[static_cast<std::size_t>(it - gens.begin())];
  };
  for (const auto& m : ovoid.members()) {
    if (m.dim() == P.rank()) {
      bump(m);
    } else {
      for (const auto& g : P.generators_through(m, budget)) bump(g);
    }
  }
  return counts;
}

}  // namespace

VerificationReport verify(const OvoidSet& ovoid, Rule rule, const EnumerationBudget& budget) {
  const PolarSpace& P = ovoid.space();
  const auto gens = P.generators(budget);
  const auto counts = cover_counts(ovoid, gens, budget);
  VerificationReport rep;
  rep.generators_checked = gens.size();
  bool all_one = true;
  bool at_most_one = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int c = counts[i];
    ++rep.histogram[c];
    all_one = all_one && c == 1;
    at_most_one = at_most_one && c <= 1;
    const bool bad = rule == Rule::kExact ? c != 1 : c > 1;
    if (bad) rep.violations.push_back({gens[i], c});
  }
  rep.status = all_one ? Status::kExact : at_most_one ? Status::kPartial : Status::kInvalid;
  if (rule == Rule::kExact) {
    if (auto k = ovoid.homogeneous_dim()) {
      const BigInt expected = ovoid_size(P.rank(), *k, P.e2(), P.q());
      if (BigInt(ovoid.size()) != expected) {
        rep.diagnostic = "a (" + std::to_string(P.rank()) + "," + std::to_string(*k) +
                         ")-ovoid has " + expected.str() + " members, found " +
                         std::to_string(ovoid.size());
        if (rep.status == Status::kExact) rep.status = Status::kInvalid;
      }
    }
  }
  return rep;
}

std::string type_signature(const std::vector<Subspace>& members) {
  std::map<int, std::size_t> counts;
  for (const auto& m : members) ++counts[m.dim()];
  std::string out;
  for (const auto& [dim, count] : counts) {
    if (!out.empty()) out += ' ';
    out += std::to_string(dim) + "^" + std::to_string(count);
  }
  return out;
}

std::map<int, std::uint64_t> coverage_histogram(const OvoidSet& ovoid,
                                                const EnumerationBudget& budget) {
  const auto gens = ovoid.space().generators(budget);
  std::map<int, std::uint64_t> out;
  for (int c : cover_counts(ovoid, gens, budget)) ++out[c];
  return out;
}

std::optional<ReducibilityWitness> reducibility_witness(const OvoidSet& ovoid,
                                                        ReduceMode mode) {
  if (verify(ovoid).status != Status::kExact) {
    throw DomainError("reducibility needs a generalized ovoid that verifies EXACT");
  }
  const FieldTable& F = ovoid.space().field();
  const auto& ms = ovoid.members();
  std::set<Subspace> cands;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      Subspace meet = intersect(F, ms[i], ms[j]);
      if (!meet.is_trivial()) cands.insert(std::move(meet));
    }
  }
  std::vector<Subspace> order(cands.begin(), cands.end());
  std::stable_sort(order.begin(), order.end(), [](const Subspace& a, const Subspace& b) {
    return a.dim() > b.dim();
  });
  for (const auto& pi : order) {
    ReducibilityWitness w;
    w.mode = mode;
    w.pi = pi;
    std::vector<Subspace> rest;
    for (const auto& m : ms) {
      if (is_subspace_of(F, pi, m)) {
        w.members_selected.push_back(m);
      } else {
        rest.push_back(m);
      }
    }
    if (w.members_selected.size() < 2) continue;
    if (mode == ReduceMode::kPairwise) return w;
    rest.push_back(pi);
    OvoidSet smaller(ovoid.space_ptr(), rest);
    if (verify(smaller).status == Status::kExact) {
      w.replaced = smaller.members();
      return w;
    }
  }
  return std::nullopt;
}

OvoidSet to_standard_model(const OvoidSet& ovoid) {
  if (ovoid.space().is_standard()) return ovoid;
  StandardFrame frame = standardize(ovoid.space());
  std::vector<Subspace> mapped;
  for (const auto& m : ovoid.members()) mapped.push_back(frame.to_standard(m));
  return OvoidSet(share(frame.standard()), std::move(mapped));
}

namespace {
constexpr std::string_view kMagic = "polarcover-ovoid v1";
}

void write_ovoid(std::ostream& out, const OvoidSet& ovoid) {
  const OvoidSet std_set = to_standard_model(ovoid);
  out << kMagic << '\n'
      << std_set.space().descriptor().to_string() << '\n'
      << std_set.space().field().descriptor() << '\n';
  for (const auto& m : std_set.members()) out << to_text(m) << '\n';
}

std::string write_ovoid(const OvoidSet& ovoid) {
  std::ostringstream os;
  write_ovoid(os, ovoid);
  return os.str();
}

OvoidSet read_ovoid(std::istream& in, const std::optional<SpaceDescriptor>& expected) {
  std::string line;
  int lineno = 0;
  auto next = [&]() {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next()) throw ParseError("empty ovoid file", 1);
  if (line != kMagic) throw ParseError("expected header '" + std::string(kMagic) + "'", lineno);
  if (!next()) throw ParseError("missing space descriptor", 2);
  SpaceDescriptor desc;
  try {
    desc = SpaceDescriptor::parse(line);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), lineno);
  }
  if (expected && !(*expected == desc)) {
    throw DomainError("descriptor mismatch: file is for " + desc.to_string() + ", expected " +
                      expected->to_string());
  }
  auto space = share(PolarSpace::standard(desc));
  if (!next()) throw ParseError("missing field descriptor", 3);
  if (line != space->field().descriptor()) {
    throw ParseError("field " + line + " does not match " + desc.to_string() + " (expected " +
                         space->field().descriptor() + ")",
                     lineno);
  }
  std::vector<Subspace> members;
  while (next()) {
    if (line.empty()) continue;
    Subspace S;
    try {
      S = subspace_from_text(space->field(), space->n(), line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (S.is_trivial()) throw ParseError("trivial subspace is not a member", lineno);
    if (!space->is_totally_isotropic(S)) {
      throw ParseError("member is not totally isotropic in " + desc.to_string(), lineno);
    }
    members.push_back(std::move(S));
  }
  return OvoidSet(space, std::move(members));
}

OvoidSet read_ovoid_file(const std::string& path, const std::optional<SpaceDescriptor>& expected) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return read_ovoid(in, expected);
}

void write_ovoid_file(const std::string& path, const OvoidSet& ovoid) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  write_ovoid(out, ovoid);
  if (!out) throw DomainError("error writing " + path);
}

}  // namespace polarcover
