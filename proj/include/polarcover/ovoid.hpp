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

#ifndef POLARCOVER_OVOID_HPP_
#define POLARCOVER_OVOID_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polarcover/polar_space.hpp"

namespace polarcover {

using SpacePtr = std::shared_ptr<const PolarSpace>;

inline SpacePtr share(PolarSpace P) {
  return std::make_shared<const PolarSpace>(std::move(P));
}

/// A set of nontrivial totally isotropic subspaces of a polar space, kept
/// sorted and free of duplicates.
class OvoidSet {
 public:
  OvoidSet() = default;
  /// Canonicalizes the member list. Throws DomainError if a member is
  /// trivial, lives in the wrong ambient space or is not totally isotropic.
  OvoidSet(SpacePtr space, std::vector<Subspace> members);

  const PolarSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<Subspace>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  /// Dimension -> number of members.
  std::map<int, std::size_t> dimension_counts() const;
  /// The common dimension, if all members share one.
  std::optional<int> homogeneous_dim() const;

 private:
  SpacePtr space_;
  std::vector<Subspace> members_;
};

enum class Rule { kExact, kPartial };
enum class Status { kExact, kPartial, kInvalid };

std::string_view status_name(Status s);

struct Violation {
  Subspace generator;
  int count = 0;
};

struct VerificationReport {
  Status status = Status::kInvalid;
  /// Generators (sorted) containing != 1 members (EXACT rule) or >= 2
  /// members (PARTIAL rule).
  std::vector<Violation> violations;
  std::uint64_t generators_checked = 0;
  /// Cover count -> number of generators.
  std::map<int, std::uint64_t> histogram;
  /// Set when a homogeneous set has the wrong size for an (r,k)-ovoid.
  std::string diagnostic;
};

/// Counts, for every generator, how many members it contains.
VerificationReport verify(const OvoidSet& ovoid, Rule rule = Rule::kExact,
                          const EnumerationBudget& budget = {});

/// "1^6 2^15"; empty for the empty set.
std::string type_signature(const std::vector<Subspace>& members);
inline std::string type_signature(const OvoidSet& o) { return type_signature(o.members()); }

std::map<int, std::uint64_t> coverage_histogram(const OvoidSet& ovoid,
                                                const EnumerationBudget& budget = {});

enum class ReduceMode { kPairwise, kReplaceable };

struct ReducibilityWitness {
  ReduceMode mode = ReduceMode::kPairwise;
  Subspace pi;
  std::vector<Subspace> members_selected;
  /// Only for kReplaceable: the smaller ovoid after replacement.
  std::vector<Subspace> replaced;
};

/// Searches a nontrivial pi contained in at least two members. Candidates
/// are the pairwise intersections, largest dimension first, then lex.
/// Returns nullopt when the ovoid is irreducible under `mode`. Throws
/// DomainError unless the input verifies EXACT.
std::optional<ReducibilityWitness> reducibility_witness(const OvoidSet& ovoid,
                                                        ReduceMode mode);

/// The same set in the coordinates of the standard model (identity for
/// sets already on a standard space).
OvoidSet to_standard_model(const OvoidSet& ovoid);

/// Text format: "polarcover-ovoid v1", the space descriptor, the field
/// descriptor, then one member per line. Non-standard spaces are written in
/// standard coordinates.
void write_ovoid(std::ostream& out, const OvoidSet& ovoid);
std::string write_ovoid(const OvoidSet& ovoid);
/// Throws ParseError (with line number) or DomainError. When `expected` is
/// given the file must be for that space.
OvoidSet read_ovoid(std::istream& in,
                    const std::optional<SpaceDescriptor>& expected = std::nullopt);
OvoidSet read_ovoid_file(const std::string& path,
                         const std::optional<SpaceDescriptor>& expected = std::nullopt);
void write_ovoid_file(const std::string& path, const OvoidSet& ovoid);

}  // namespace polarcover

#endif  // POLARCOVER_OVOID_HPP_
