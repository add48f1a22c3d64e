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

#ifndef POLARCOVER_LINALG_HPP_
#define POLARCOVER_LINALG_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polarcover/gf.hpp"

namespace polarcover {

using Vector = std::vector<Elem>;

/// A linear subspace of V(n, q), stored as the unique reduced row echelon
/// basis of its span. Two Subspaces are equal as sets iff their bases are
/// identical, so equality, ordering and hashing act on the matrix directly.
///
/// Ordering is by dimension first, then lexicographic on the row-major
/// basis entries.
class Subspace {
 public:
  Subspace() = default;

  static Subspace trivial(int n);
  static Subspace full(int n);
  /// Wraps a matrix that is already in RREF. Only the shape is checked.
  static Subspace from_rref(int n, std::vector<Elem> rows);

  int ambient() const { return n_; }
  int dim() const { return k_; }
  bool is_trivial() const { return k_ == 0; }

  std::span<const Elem> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * n_,
            static_cast<std::size_t>(n_)};
  }
  const std::vector<Elem>& matrix() const { return data_; }
  const std::vector<int>& pivots() const { return pivots_; }
  std::vector<Vector> rows() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.data_ == b.data_;
  }
  friend std::strong_ordering operator<=>(const Subspace& a,
                                          const Subspace& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.k_ <=> b.k_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Elem> data_;
  std::vector<int> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

/// Limits the ambient size of exhaustive enumerations.
struct EnumerationBudget {
  std::uint64_t max_vectors = std::uint64_t{1} << 24;  // q^n cap
};

/// Row-reduces `mat` (rows x n, row-major) in place to RREF and returns the
/// rank; the first `rank` rows hold the basis, the pivot columns are
/// written to `pivots`.
int row_reduce(const FieldTable& F, std::vector<Elem>& mat, int rows, int n,
               std::vector<int>* pivots = nullptr);

/// Canonical RREF basis of the span of `rows`. Throws DomainError on ragged
/// input.
Subspace rref_canonical(const FieldTable& F, int n,
                        const std::vector<Vector>& rows);
Subspace span_of(const FieldTable& F, int n, std::span<const Elem> flat_rows);

/// v in S?
bool contains(const FieldTable& F, const Subspace& S, std::span<const Elem> v);
/// A subset of B?
bool is_subspace_of(const FieldTable& F, const Subspace& A, const Subspace& B);

Subspace intersect(const FieldTable& F, const Subspace& A, const Subspace& B);
Subspace span_sum(const FieldTable& F, const Subspace& A, const Subspace& B);
/// S + <v>.
Subspace extend(const FieldTable& F, const Subspace& S, std::span<const Elem> v);

/// {x : sum_j c_j x_j = 0 for every row c} for `count` functionals of
/// length n stored row-major in `functionals`.
Subspace null_space(const FieldTable& F, int n,
                    std::span<const Elem> functionals);

/// Sum_i y_i b_i over the rows of `basis`.
Vector combine(const FieldTable& F, const Subspace& basis,
               std::span<const Elem> y);

/// Scales v so its first nonzero entry is 1; zero stays zero.
void normalize(const FieldTable& F, Vector& v);

/// Calls `fn` once per 1-space of V(n,q) with its normalized spanning
/// vector, in lexicographic order of that vector.
void for_each_point(const FieldTable& F, int n,
                    const std::function<void(const Vector&)>& fn,
                    const EnumerationBudget& budget = {});

/// Every k-subspace of V(n,q) exactly once, ordered lexicographically on
/// RREF matrices. Throws BudgetExceeded when q^n exceeds the budget.
std::vector<Subspace> enumerate_subspaces(const FieldTable& F, int n, int k,
                                          const EnumerationBudget& budget = {});

/// Text form "1,0,1;0,1,1"; the trivial subspace is "0".
std::string to_text(const Subspace& S);
/// Parses the text form and re-canonicalizes. Throws ParseError.
Subspace subspace_from_text(const FieldTable& F, int n, std::string_view text);

/// Coordinates on a fixed subspace U of V(n,q): y in V(dim U, q) maps to
/// sum y_i u_i over the RREF basis of U, and a vector of U maps back to its
/// entries at the pivot columns.
class Chart {
 public:
  Chart() = default;
  Chart(FieldPtr field, Subspace frame);

  const Subspace& frame() const { return frame_; }
  int dim() const { return frame_.dim(); }
  int ambient() const { return frame_.ambient(); }

  Vector embed(std::span<const Elem> y) const;
  /// x must lie in the frame; no check is made.
  Vector coords(std::span<const Elem> x) const;
  Subspace embed(const Subspace& S) const;
  /// Throws DomainError if S is not inside the frame.
  Subspace coords(const Subspace& S) const;

 private:
  FieldPtr field_;
  Subspace frame_;
};

}  // namespace polarcover

#endif  // POLARCOVER_LINALG_HPP_
