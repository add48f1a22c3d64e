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

#include "polarcover/linalg.hpp"

#include <algorithm>
#include <charconv>

#include "polarcover/error.hpp"

namespace polarcover {
namespace {

void check_budget(const FieldTable& F, int n, const EnumerationBudget& budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= F.q();
    if (total > budget.max_vectors) {
      throw BudgetExceeded("enumeration of V(" + std::to_string(n) + "," +
                           std::to_string(F.q()) + ") exceeds the budget of " +
                           std::to_string(budget.max_vectors) + " vectors");
    }
  }
}

void require_same_ambient(const Subspace& A, const Subspace& B) {
  if (A.ambient() != B.ambient()) {
    throw DomainError("ambient dimension mismatch: " +
                      std::to_string(A.ambient()) + " vs " +
                      std::to_string(B.ambient()));
  }
}

}  // namespace

Subspace Subspace::trivial(int n) {
  Subspace s;
  s.n_ = n;
  return s;
}

Subspace Subspace::full(int n) {
  std::vector<Elem> rows(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i) * n + i] = 1;
  return from_rref(n, std::move(rows));
}

Subspace Subspace::from_rref(int n, std::vector<Elem> rows) {
  if (n <= 0 || rows.size() % static_cast<std::size_t>(n) != 0) {
    if (!(n == 0 && rows.empty())) throw DomainError("ragged RREF matrix");
  }
  Subspace s;
  s.n_ = n;
  s.k_ = n == 0 ? 0 : static_cast<int>(rows.size() / n);
  s.data_ = std::move(rows);
  s.pivots_.reserve(s.k_);
  for (int i = 0; i < s.k_; ++i) {
    int c = 0;
    while (c < n && s.data_[static_cast<std::size_t>(i) * n + c] == 0) ++c;
    if (c == n) throw DomainError("zero row in RREF matrix");
    s.pivots_.push_back(c);
  }
  return s;
}

std::vector<Vector> Subspace::rows() const {
  std::vector<Vector> out;
  out.reserve(k_);
  for (int i = 0; i < k_; ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::size_t h = static_cast<std::size_t>(s.ambient()) * 1315423911u + s.dim();
  for (Elem e : s.matrix()) h = h * 1099511628211ull + e + 0x9e3779b9u;
  return h;
}

int row_reduce(const FieldTable& F, std::vector<Elem>& mat, int rows, int n,
               std::vector<int>* pivots) {
  int rank = 0;
  if (pivots) pivots->clear();
  for (int col = 0; col < n && rank < rows; ++col) {
    int sel = -1;
    for (int r = rank; r < rows; ++r) {
      if (mat[static_cast<std::size_t>(r) * n + col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    Elem* top = &mat[static_cast<std::size_t>(rank) * n];
    if (sel != rank) {
      std::swap_ranges(top, top + n, &mat[static_cast<std::size_t>(sel) * n]);
    }
    const Elem inv = F.inv(top[col]);
    if (inv != 1) {
      for (int j = col; j < n; ++j) top[j] = F.mul(top[j], inv);
    }
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      Elem* cur = &mat[static_cast<std::size_t>(r) * n];
      const Elem factor = cur[col];
      if (factor == 0) continue;
      const Elem nf = F.neg(factor);
      for (int j = col; j < n; ++j) {
        if (top[j] != 0) cur[j] = F.add(cur[j], F.mul(nf, top[j]));
      }
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

Subspace span_of(const FieldTable& F, int n, std::span<const Elem> flat_rows) {
  if (n <= 0) return Subspace::trivial(n);
  if (flat_rows.size() % static_cast<std::size_t>(n) != 0) {
    throw DomainError("ragged input to span");
  }
  const int count = static_cast<int>(flat_rows.size() / n);
  std::vector<Elem> mat(flat_rows.begin(), flat_rows.end());
  const int rank = row_reduce(F, mat, count, n);
  mat.resize(static_cast<std::size_t>(rank) * n);
  return Subspace::from_rref(n, std::move(mat));
}

Subspace rref_canonical(const FieldTable& F, int n,
                        const std::vector<Vector>& rows) {
  std::vector<Elem> flat;
  flat.reserve(rows.size() * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) {
      throw DomainError("ragged input: row of length " +
                        std::to_string(r.size()) + ", expected " +
                        std::to_string(n));
    }
    for (Elem e : r) {
      if (e >= F.q()) throw DomainError("invalid field element in row");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return span_of(F, n, flat);
}

bool contains(const FieldTable& F, const Subspace& S, std::span<const Elem> v) {
  const int n = S.ambient();
  Vector w(v.begin(), v.end());
  const auto& piv = S.pivots();
  for (int i = 0; i < S.dim(); ++i) {
    const Elem c = w[piv[i]];
    if (c == 0) continue;
    const Elem nc = F.neg(c);
    auto r = S.row(i);
    for (int j = piv[i]; j < n; ++j) {
      if (r[j] != 0) w[j] = F.add(w[j], F.mul(nc, r[j]));
    }
  }
  return std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; });
}

bool is_subspace_of(const FieldTable& F, const Subspace& A, const Subspace& B) {
  require_same_ambient(A, B);
  if (A.dim() > B.dim()) return false;
  for (int i = 0; i < A.dim(); ++i) {
    if (!contains(F, B, A.row(i))) return false;
  }
  return true;
}

Subspace null_space(const FieldTable& F, int n,
                    std::span<const Elem> functionals) {
  if (functionals.empty()) return Subspace::full(n);
  std::vector<Elem> mat(functionals.begin(), functionals.end());
  const int count = static_cast<int>(mat.size() / n);
  std::vector<int> piv;
  const int rank = row_reduce(F, mat, count, n, &piv);
  std::vector<char> is_pivot(n, 0);
  for (int c : piv) is_pivot[c] = 1;
  std::vector<Elem> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector x(n, 0);
    x[f] = 1;
    for (int i = 0; i < rank; ++i) {
      x[piv[i]] = F.neg(mat[static_cast<std::size_t>(i) * n + f]);
    }
    basis.insert(basis.end(), x.begin(), x.end());
  }
  return span_of(F, n, basis);
}

Subspace intersect(const FieldTable& F, const Subspace& A, const Subspace& B) {
  require_same_ambient(A, B);
  const int n = A.ambient();
  const Subspace a_perp = null_space(F, n, A.matrix());
  const Subspace b_perp = null_space(F, n, B.matrix());
  std::vector<Elem> both = a_perp.matrix();
  both.insert(both.end(), b_perp.matrix().begin(), b_perp.matrix().end());
  return null_space(F, n, both);
}

Subspace span_sum(const FieldTable& F, const Subspace& A, const Subspace& B) {
  require_same_ambient(A, B);
  std::vector<Elem> both = A.matrix();
  both.insert(both.end(), B.matrix().begin(), B.matrix().end());
  return span_of(F, A.ambient(), both);
}

Subspace extend(const FieldTable& F, const Subspace& S, std::span<const Elem> v) {
  if (static_cast<int>(v.size()) != S.ambient()) {
    throw DomainError("vector length does not match the ambient dimension");
  }
  std::vector<Elem> both = S.matrix();
  both.insert(both.end(), v.begin(), v.end());
  return span_of(F, S.ambient(), both);
}

Vector combine(const FieldTable& F, const Subspace& basis,
               std::span<const Elem> y) {
  const int n = basis.ambient();
  Vector out(n, 0);
  for (int i = 0; i < basis.dim(); ++i) {
    if (y[i] == 0) continue;
    auto r = basis.row(i);
    for (int j = 0; j < n; ++j) {
      if (r[j] != 0) out[j] = F.add(out[j], F.mul(y[i], r[j]));
    }
  }
  return out;
}

void normalize(const FieldTable& F, Vector& v) {
  for (Elem e : v) {
    if (e == 0) continue;
    if (e != 1) {
      const Elem inv = F.inv(e);
      for (Elem& x : v) x = F.mul(x, inv);
    }
    return;
  }
}

void for_each_point(const FieldTable& F, int n,
                    const std::function<void(const Vector&)>& fn,
                    const EnumerationBudget& budget) {
  check_budget(F, n, budget);
  const unsigned q = F.q();
  Vector v(n, 0);
  for (int lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    // Odometer over positions lead+1..n-1, last position fastest.
    while (true) {
      fn(v);
      int j = n - 1;
      while (j > lead && v[j] == q - 1) {
        v[j] = 0;
        --j;
      }
      if (j == lead) break;
      ++v[j];
    }
  }
}

std::vector<Subspace> enumerate_subspaces(const FieldTable& F, int n, int k,
                                          const EnumerationBudget& budget) {
  if (k < 0 || k > n) {
    throw DomainError("subspace dimension " + std::to_string(k) +
                      " out of range for V(" + std::to_string(n) + ")");
  }
  check_budget(F, n, budget);
  std::vector<Subspace> out;
  if (k == 0) {
    out.push_back(Subspace::trivial(n));
    return out;
  }
  const unsigned q = F.q();
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<char> is_pivot(n, 0);
    for (int c : piv) is_pivot[c] = 1;
    std::vector<std::size_t> free_slots;
    std::vector<Elem> mat(static_cast<std::size_t>(k) * n, 0);
    for (int i = 0; i < k; ++i) {
      mat[static_cast<std::size_t>(i) * n + piv[i]] = 1;
      for (int j = piv[i] + 1; j < n; ++j) {
        if (!is_pivot[j]) free_slots.push_back(static_cast<std::size_t>(i) * n + j);
      }
    }
    while (true) {
      out.push_back(Subspace::from_rref(n, mat));
      std::size_t t = free_slots.size();
      while (t > 0 && mat[free_slots[t - 1]] == q - 1) {
        mat[free_slots[t - 1]] = 0;
        --t;
      }
      if (t == 0) break;
      ++mat[free_slots[t - 1]];
    }
    // Next pivot combination.
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_text(const Subspace& S) {
  if (S.is_trivial()) return "0";
  std::string out;
  for (int i = 0; i < S.dim(); ++i) {
    if (i > 0) out += ';';
    auto r = S.row(i);
    for (int j = 0; j < S.ambient(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(r[j]);
    }
  }
  return out;
}

Subspace subspace_from_text(const FieldTable& F, int n, std::string_view text) {
  if (text == "0") return Subspace::trivial(n);
  std::vector<Vector> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    Vector v;
    std::size_t p = 0;
    while (p <= row.size()) {
      std::size_t e = row.find(',', p);
      if (e == std::string_view::npos) e = row.size();
      std::string_view tok = row.substr(p, e - p);
      long long value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("bad element '" + std::string(tok) + "' in subspace '" +
                         std::string(text) + "'");
      }
      if (value < 0 || value >= static_cast<long long>(F.q())) {
        throw ParseError("element " + std::to_string(value) +
                         " out of range for GF(" + std::to_string(F.q()) + ")");
      }
      v.push_back(static_cast<Elem>(value));
      p = e + 1;
    }
    if (static_cast<int>(v.size()) != n) {
      throw ParseError("row of length " + std::to_string(v.size()) +
                       ", expected " + std::to_string(n));
    }
    rows.push_back(std::move(v));
    pos = end + 1;
  }
  return rref_canonical(F, n, rows);
}

Chart::Chart(FieldPtr field, Subspace frame)
    : field_(std::move(field)), frame_(std::move(frame)) {}

Vector Chart::embed(std::span<const Elem> y) const {
  return combine(*field_, frame_, y);
}

Vector Chart::coords(std::span<const Elem> x) const {
  Vector y(frame_.dim());
  for (int i = 0; i < frame_.dim(); ++i) y[i] = x[frame_.pivots()[i]];
  return y;
}

Subspace Chart::embed(const Subspace& S) const {
  std::vector<Elem> flat;
  flat.reserve(static_cast<std::size_t>(S.dim()) * ambient());
  for (int i = 0; i < S.dim(); ++i) {
    Vector v = embed(S.row(i));
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return span_of(*field_, ambient(), flat);
}

Subspace Chart::coords(const Subspace& S) const {
  if (!is_subspace_of(*field_, S, frame_)) {
    throw DomainError("subspace is not contained in the chart frame");
  }
  std::vector<Elem> flat;
  for (int i = 0; i < S.dim(); ++i) {
    Vector y = coords(S.row(i));
    flat.insert(flat.end(), y.begin(), y.end());
  }
  return span_of(*field_, dim(), flat);
}

}  // namespace polarcover
