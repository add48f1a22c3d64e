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

#include "polarcover/polar_space.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <stdexcept>

#include "polarcover/error.hpp"

namespace polarcover {

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::kHyperbolic: return "HYPERBOLIC";
    case Kind::kParabolic: return "PARABOLIC";
    case Kind::kElliptic: return "ELLIPTIC";
    case Kind::kHermitianOdd: return "HERMITIAN_ODD";
    case Kind::kHermitianEven: return "HERMITIAN_EVEN";
    case Kind::kSymplectic: return "SYMPLECTIC";
  }
  return "?";
}

bool is_quadric(Kind kind) {
  return kind == Kind::kHyperbolic || kind == Kind::kParabolic ||
         kind == Kind::kElliptic;
}

bool is_hermitian(Kind kind) {
  return kind == Kind::kHermitianOdd || kind == Kind::kHermitianEven;
}

int ambient_dim(Kind kind, int rank) {
  switch (kind) {
    case Kind::kHyperbolic:
    case Kind::kHermitianOdd:
    case Kind::kSymplectic: return 2 * rank;
    case Kind::kParabolic:
    case Kind::kHermitianEven: return 2 * rank + 1;
    case Kind::kElliptic: return 2 * rank + 2;
  }
  return 0;
}

int twice_e(Kind kind) {
  switch (kind) {
    case Kind::kHyperbolic: return 0;
    case Kind::kHermitianOdd: return 1;
    case Kind::kSymplectic:
    case Kind::kParabolic: return 2;
    case Kind::kHermitianEven: return 3;
    case Kind::kElliptic: return 4;
  }
  return 0;
}

std::string SpaceDescriptor::to_string() const {
  std::string prefix;
  switch (kind) {
    case Kind::kHyperbolic: prefix = "Q+"; break;
    case Kind::kParabolic: prefix = "Q"; break;
    case Kind::kElliptic: prefix = "Q-"; break;
    case Kind::kHermitianOdd:
    case Kind::kHermitianEven: prefix = "H"; break;
    case Kind::kSymplectic: prefix = "W"; break;
  }
  return prefix + "(" + std::to_string(n() - 1) + "," + std::to_string(q) + ")";
}

SpaceDescriptor SpaceDescriptor::parse(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return ParseError("bad space descriptor '" + std::string(text) + "': " + why);
  };
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  // Accept the Unicode minus sign as well as '-'.
  if (const auto pos = s.find("\xE2\x88\x92"); pos != std::string::npos) {
    s.replace(pos, 3, "-");
  }
  const auto open = s.find('(');
  const auto comma = s.find(',');
  const auto close = s.find(')');
  if (open == std::string::npos || comma == std::string::npos ||
      close == std::string::npos || !(open < comma && comma < close) ||
      close + 1 != s.size()) {
    throw fail("expected NAME(m,q)");
  }
  const std::string prefix = s.substr(0, open);
  auto number = [&](std::string_view t) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      throw fail("expected integers");
    }
    return v;
  };
  const int m = number(std::string_view(s).substr(open + 1, comma - open - 1));
  const int q = number(std::string_view(s).substr(comma + 1, close - comma - 1));
  const int n = m + 1;
  unsigned p = 0;
  unsigned h = 0;
  if (q < 2 || !prime_power(static_cast<unsigned>(q), p, h)) {
    throw DomainError("field size " + std::to_string(q) + " is not a prime power");
  }
  SpaceDescriptor d;
  d.q = static_cast<unsigned>(q);
  if (prefix == "Q+") {
    if (n % 2 != 0) throw fail("Q+ needs odd projective dimension");
    d.kind = Kind::kHyperbolic;
    d.rank = n / 2;
  } else if (prefix == "Q") {
    if (n % 2 != 1) throw fail("Q needs even projective dimension");
    d.kind = Kind::kParabolic;
    d.rank = (n - 1) / 2;
  } else if (prefix == "Q-") {
    if (n % 2 != 0) throw fail("Q- needs odd projective dimension");
    d.kind = Kind::kElliptic;
    d.rank = n / 2 - 1;
  } else if (prefix == "H") {
    if (h % 2 != 0) {
      throw DomainError("Hermitian space needs a square field size, got " +
                        std::to_string(q));
    }
    d.kind = n % 2 == 0 ? Kind::kHermitianOdd : Kind::kHermitianEven;
    d.rank = n % 2 == 0 ? n / 2 : (n - 1) / 2;
  } else if (prefix == "W") {
    if (n % 2 != 0) throw fail("W needs odd projective dimension");
    d.kind = Kind::kSymplectic;
    d.rank = n / 2;
  } else {
    throw fail("unknown family '" + prefix + "'");
  }
  if (d.rank < 1) throw DomainError("polar space rank must be >= 1");
  return d;
}

// ---------------------------------------------------------------------------
// Form

Form::Form(FormType type, int n, std::vector<Elem> coeffs)
    : type_(type), n_(n), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(n) * n) {
    throw DomainError("form coefficient matrix has wrong size");
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const Elem c = coeff(i, j);
      if (c == 0) continue;
      if (type_ == FormType::kQuadratic) {
        if (j < i) throw DomainError("quadratic coefficients must be upper triangular");
        q_terms_.push_back({i, j, c});
      } else {
        g_terms_.push_back({i, j, c});
      }
    }
  }
}

Elem Form::eval(const FieldTable& F, std::span<const Elem> v,
                std::span<const Elem> w) const {
  Elem out = 0;
  if (type_ == FormType::kQuadratic) {
    for (const Term& t : q_terms_) {
      const Elem s = F.add(F.mul(v[t.i], w[t.j]), F.mul(v[t.j], w[t.i]));
      if (s != 0) out = F.add(out, F.mul(t.c, s));
    }
    return out;
  }
  const bool herm = type_ == FormType::kHermitian;
  for (const Term& t : g_terms_) {
    if (v[t.i] == 0 || w[t.j] == 0) continue;
    const Elem wj = herm ? F.conj(w[t.j]) : w[t.j];
    out = F.add(out, F.mul(F.mul(v[t.i], t.c), wj));
  }
  return out;
}

Elem Form::eval_quadratic(const FieldTable& F, std::span<const Elem> v) const {
  if (type_ != FormType::kQuadratic) {
    throw DomainError("quadratic value requested for a non-quadratic form");
  }
  Elem out = 0;
  for (const Term& t : q_terms_) {
    if (v[t.i] == 0 || v[t.j] == 0) continue;
    out = F.add(out, F.mul(t.c, F.mul(v[t.i], v[t.j])));
  }
  return out;
}

bool Form::is_singular(const FieldTable& F, std::span<const Elem> v) const {
  switch (type_) {
    case FormType::kQuadratic: return eval_quadratic(F, v) == 0;
    case FormType::kHermitian: return eval(F, v, v) == 0;
    case FormType::kAlternating: return true;
  }
  return false;
}

Vector Form::functional(const FieldTable& F, std::span<const Elem> s) const {
  Vector c(n_, 0);
  if (type_ == FormType::kQuadratic) {
    for (const Term& t : q_terms_) {
      if (t.i == t.j) {
        const Elem x = F.mul(t.c, s[t.i]);
        c[t.i] = F.add(c[t.i], F.add(x, x));
      } else {
        c[t.j] = F.add(c[t.j], F.mul(t.c, s[t.i]));
        c[t.i] = F.add(c[t.i], F.mul(t.c, s[t.j]));
      }
    }
    return c;
  }
  for (const Term& t : g_terms_) {
    if (s[t.i] != 0) c[t.j] = F.add(c[t.j], F.mul(s[t.i], t.c));
  }
  if (type_ == FormType::kHermitian) {
    for (Elem& x : c) x = F.conj(x);
  }
  return c;
}

Form Form::restrict_to(const FieldTable& F, const Chart& chart) const {
  const int m = chart.dim();
  const Subspace& U = chart.frame();
  std::vector<Elem> out(static_cast<std::size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (type_ == FormType::kQuadratic) {
        if (b < a) continue;
        out[static_cast<std::size_t>(a) * m + b] =
            a == b ? eval_quadratic(F, U.row(a)) : eval(F, U.row(a), U.row(b));
      } else {
        out[static_cast<std::size_t>(a) * m + b] = eval(F, U.row(a), U.row(b));
      }
    }
  }
  return Form(type_, m, std::move(out));
}

Elem elliptic_constant(const FieldTable& F) {
  for (unsigned c = 0; c < F.q(); ++c) {
    bool has_root = false;
    for (unsigned t = 0; t < F.q() && !has_root; ++t) {
      const Elem x = static_cast<Elem>(t);
      // t^2 + t + c
      has_root = F.add(F.add(F.mul(x, x), x), static_cast<Elem>(c)) == 0;
    }
    if (!has_root) return static_cast<Elem>(c);
  }
  throw std::logic_error("no irreducible X0^2 + X0X1 + cX1^2");
}

Form standard_form(const FieldTable& F, const SpaceDescriptor& d) {
  const int n = d.n();
  std::vector<Elem> c(static_cast<std::size_t>(n) * n, 0);
  auto at = [&](int i, int j) -> Elem& { return c[static_cast<std::size_t>(i) * n + j]; };
  switch (d.kind) {
    case Kind::kHyperbolic:
      for (int i = 0; i + 1 < n; i += 2) at(i, i + 1) = 1;
      return Form(FormType::kQuadratic, n, std::move(c));
    case Kind::kParabolic:
      at(0, 0) = 1;
      for (int i = 1; i + 1 < n; i += 2) at(i, i + 1) = 1;
      return Form(FormType::kQuadratic, n, std::move(c));
    case Kind::kElliptic:
      at(0, 0) = 1;
      at(0, 1) = 1;
      at(1, 1) = elliptic_constant(F);
      for (int i = 2; i + 1 < n; i += 2) at(i, i + 1) = 1;
      return Form(FormType::kQuadratic, n, std::move(c));
    case Kind::kHermitianOdd:
    case Kind::kHermitianEven:
      for (int i = 0; i < n; ++i) at(i, i) = 1;
      return Form(FormType::kHermitian, n, std::move(c));
    case Kind::kSymplectic:
      for (int i = 0; i + 1 < n; i += 2) {
        at(i, i + 1) = 1;
        at(i + 1, i) = F.neg(1);
      }
      return Form(FormType::kAlternating, n, std::move(c));
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Classification

namespace {

Subspace polar_radical(const FieldTable& F, const Form& form) {
  const int n = form.n();
  std::vector<Elem> rows;
  Vector e(n, 0);
  for (int i = 0; i < n; ++i) {
    e[i] = 1;
    Vector f = form.functional(F, e);
    rows.insert(rows.end(), f.begin(), f.end());
    e[i] = 0;
  }
  return null_space(F, n, rows);
}

std::uint64_t ipow64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::uint64_t count_singular_points(const FieldTable& F, const Form& form,
                                    const EnumerationBudget& budget) {
  std::uint64_t count = 0;
  if (form.n() == 0) return 0;
  for_each_point(F, form.n(), [&](const Vector& v) {
    if (form.is_singular(F, v)) ++count;
  }, budget);
  return count;
}

// Singular vectors of the polar radical, as a subspace.
Subspace singular_radical(const FieldTable& F, const Form& form,
                          const Subspace& rad) {
  if (form.type() != FormType::kQuadratic || F.p() != 2 || rad.is_trivial()) {
    return rad;
  }
  // In characteristic 2, Q is additive on the polar radical, so its zeros
  // form a subspace.
  std::vector<Elem> rows;
  Chart chart(std::make_shared<const FieldTable>(F), rad);
  for_each_point(F, rad.dim(), [&](const Vector& y) {
    Vector x = chart.embed(y);
    if (form.eval_quadratic(F, x) == 0) rows.insert(rows.end(), x.begin(), x.end());
  });
  return span_of(F, form.n(), rows);
}

}  // namespace

FormClass classify_form(const FieldTable& F, const Form& form,
                        const EnumerationBudget& budget) {
  FormClass out;
  const int n = form.n();
  const Subspace rad = polar_radical(F, form);
  out.radical = singular_radical(F, form, rad);
  out.point_count = count_singular_points(F, form, budget);
  out.descriptor.q = F.q();
  switch (form.type()) {
    case FormType::kQuadratic: {
      bool nondeg = rad.is_trivial();
      if (!nondeg && F.p() == 2 && rad.dim() == 1) {
        nondeg = form.eval_quadratic(F, rad.row(0)) != 0;
      }
      if (!nondeg || n == 0) {
        out.degenerate = true;
        return out;
      }
      if (n % 2 == 1) {
        out.descriptor.kind = Kind::kParabolic;
        out.descriptor.rank = (n - 1) / 2;
      } else {
        const int m = n / 2;
        const std::uint64_t q = F.q();
        const std::uint64_t hyperbolic =
            (ipow64(q, m) - 1) / (q - 1) * (ipow64(q, m - 1) + 1);
        if (out.point_count == hyperbolic) {
          out.descriptor.kind = Kind::kHyperbolic;
          out.descriptor.rank = m;
        } else {
          out.descriptor.kind = Kind::kElliptic;
          out.descriptor.rank = m - 1;
        }
      }
      return out;
    }
    case FormType::kHermitian:
      if (!rad.is_trivial() || n == 0) {
        out.degenerate = true;
        return out;
      }
      out.descriptor.kind = n % 2 == 0 ? Kind::kHermitianOdd : Kind::kHermitianEven;
      out.descriptor.rank = n / 2;
      return out;
    case FormType::kAlternating:
      if (!rad.is_trivial() || n == 0) {
        out.degenerate = true;
        return out;
      }
      out.descriptor.kind = Kind::kSymplectic;
      out.descriptor.rank = n / 2;
      return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// PolarSpace

PolarSpace::PolarSpace(FieldPtr field, SpaceDescriptor descriptor, Form form)
    : field_(std::move(field)), desc_(descriptor), form_(std::move(form)) {
  const FieldTable& F = *field_;
  if (desc_.q != F.q()) throw DomainError("descriptor and field disagree on q");
  if (form_.n() != desc_.n()) {
    throw DomainError("form dimension " + std::to_string(form_.n()) +
                      " does not match " + desc_.to_string());
  }
  const FormType expected = is_quadric(desc_.kind)   ? FormType::kQuadratic
                            : is_hermitian(desc_.kind) ? FormType::kHermitian
                                                     : FormType::kAlternating;
  if (form_.type() != expected) throw DomainError("form type does not match kind");
  if (is_hermitian(desc_.kind) && !F.has_conjugation()) {
    throw DomainError("Hermitian space needs a square field size");
  }
  const Subspace rad = polar_radical(F, form_);
  if (desc_.kind == Kind::kParabolic && F.p() == 2) {
    if (rad.dim() != 1 || form_.eval_quadratic(F, rad.row(0)) == 0) {
      throw DomainError("degenerate parabolic form");
    }
    nucleus_ = Vector(rad.row(0).begin(), rad.row(0).end());
  } else if (!rad.is_trivial()) {
    throw DomainError("degenerate form for " + desc_.to_string());
  }
}

PolarSpace PolarSpace::standard(const SpaceDescriptor& d) {
  auto field = std::make_shared<const FieldTable>(FieldTable::for_order(d.q));
  if (is_hermitian(d.kind) && !field->has_conjugation()) {
    throw DomainError("Hermitian space needs a square field size, got " +
                      std::to_string(d.q));
  }
  Form form = standard_form(*field, d);
  PolarSpace P(std::move(field), d, std::move(form));
  P.standard_ = true;
  return P;
}

PolarSpace PolarSpace::make(std::string_view descriptor) {
  return standard(SpaceDescriptor::parse(descriptor));
}

void PolarSpace::require_ambient(std::size_t len) const {
  if (static_cast<int>(len) != n()) {
    throw DomainError("vector of length " + std::to_string(len) +
                      " in a space of dimension " + std::to_string(n()));
  }
}

void PolarSpace::require_ambient(const Subspace& S) const {
  if (S.ambient() != n()) {
    throw DomainError("subspace of V(" + std::to_string(S.ambient()) +
                      ") used in " + desc_.to_string());
  }
}

Elem PolarSpace::eval_form(std::span<const Elem> v, std::span<const Elem> w) const {
  require_ambient(v.size());
  require_ambient(w.size());
  return form_.eval(*field_, v, w);
}

Elem PolarSpace::eval_quadratic(std::span<const Elem> v) const {
  require_ambient(v.size());
  return form_.eval_quadratic(*field_, v);
}

bool PolarSpace::is_singular(std::span<const Elem> v) const {
  require_ambient(v.size());
  return form_.is_singular(*field_, v);
}

bool PolarSpace::is_totally_isotropic(const Subspace& S) const {
  require_ambient(S);
  for (int i = 0; i < S.dim(); ++i) {
    if (!form_.is_singular(*field_, S.row(i))) return false;
    for (int j = i + 1; j < S.dim(); ++j) {
      if (form_.eval(*field_, S.row(i), S.row(j)) != 0) return false;
    }
  }
  return true;
}

Subspace PolarSpace::perp(const Subspace& S) const {
  require_ambient(S);
  std::vector<Elem> rows;
  for (int i = 0; i < S.dim(); ++i) {
    Vector f = form_.functional(*field_, S.row(i));
    rows.insert(rows.end(), f.begin(), f.end());
  }
  return null_space(*field_, n(), rows);
}

std::vector<Subspace> PolarSpace::enumerate_ti(int k,
                                               const EnumerationBudget& budget) const {
  if (k < 1 || k > rank()) {
    throw DomainError("no totally isotropic " + std::to_string(k) +
                      "-spaces in a rank " + std::to_string(rank()) + " space");
  }
  const FieldTable& F = *field_;
  const int n = this->n();
  {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
      total *= F.q();
      if (total > budget.max_vectors) {
        throw BudgetExceeded("enumeration in " + desc_.to_string() +
                             " exceeds the vector budget");
      }
    }
  }
  const unsigned q = F.q();

  std::vector<Subspace> level{Subspace::trivial(n)};
  for (int t = 0; t < k; ++t) {
    std::vector<Subspace> next;
    for (const Subspace& S : level) {
      // Children: append a row v with pivot c beyond S's last pivot. Every
      // (t+1)-space arises once, from the span of its first t RREF rows.
      std::vector<Vector> L;
      for (int i = 0; i < S.dim(); ++i) L.push_back(form_.functional(F, S.row(i)));
      const int first = S.dim() == 0 ? 0 : S.pivots().back() + 1;
      for (int c = first; c < n; ++c) {
        bool column_clear = true;
        for (int i = 0; i < S.dim() && column_clear; ++i) column_clear = S.row(i)[c] == 0;
        if (!column_clear) continue;
        const int m = n - 1 - c;  // unknowns: entries c+1..n-1
        // Augmented system [M | rhs] with M[i][a] = L_i[c+1+a], rhs = -L_i[c].
        const int rows = S.dim();
        std::vector<Elem> aug(static_cast<std::size_t>(rows) * (m + 1), 0);
        for (int i = 0; i < rows; ++i) {
          for (int a = 0; a < m; ++a) aug[static_cast<std::size_t>(i) * (m + 1) + a] = L[i][c + 1 + a];
          aug[static_cast<std::size_t>(i) * (m + 1) + m] = F.neg(L[i][c]);
        }
        std::vector<int> piv;
        const int rank_aug = row_reduce(F, aug, rows, m + 1, &piv);
        if (rank_aug > 0 && piv.back() == m) continue;  // inconsistent
        std::vector<char> is_piv(m, 0);
        for (int p : piv) is_piv[p] = 1;
        std::vector<int> free_vars;
        for (int a = 0; a < m; ++a) {
          if (!is_piv[a]) free_vars.push_back(a);
        }
        Vector x(m, 0);
        Vector v(n, 0);
        while (true) {
          for (int i = 0; i < rank_aug; ++i) {
            const Elem* row = &aug[static_cast<std::size_t>(i) * (m + 1)];
            Elem val = row[m];
            for (int f : free_vars) {
              if (row[f] != 0 && x[f] != 0) val = F.sub(val, F.mul(row[f], x[f]));
            }
            x[piv[i]] = val;
          }
          std::fill(v.begin(), v.end(), 0);
          v[c] = 1;
          for (int a = 0; a < m; ++a) v[c + 1 + a] = x[a];
          if (form_.is_singular(F, v)) {
            std::vector<Elem> data = S.matrix();
            data.insert(data.end(), v.begin(), v.end());
            next.push_back(Subspace::from_rref(n, std::move(data)));
          }
          std::size_t t2 = free_vars.size();
          while (t2 > 0 && x[free_vars[t2 - 1]] == q - 1) {
            x[free_vars[t2 - 1]] = 0;
            --t2;
          }
          if (t2 == 0) break;
          ++x[free_vars[t2 - 1]];
        }
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

std::vector<Subspace> PolarSpace::generators_through(
    const Subspace& S, const EnumerationBudget& budget) const {
  require_ambient(S);
  if (!is_totally_isotropic(S)) {
    throw DomainError("subspace is not totally isotropic in " + desc_.to_string());
  }
  if (S.dim() == 0) return generators(budget);
  if (S.dim() == rank()) return {S};
  QuotientMap qm(*this, S);
  std::vector<Subspace> out;
  for (const Subspace& g : qm.base().generators(budget)) out.push_back(qm.lift(g));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Quotients and sections

namespace {

Chart quotient_chart(const PolarSpace& P, const Subspace& vertex,
                     const Subspace& vertex_perp) {
  const FieldTable& F = P.field();
  const int n = P.n();
  std::vector<char> is_pivot(n, 0);
  for (int c : vertex.pivots()) is_pivot[c] = 1;
  std::vector<Elem> rows;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vector e(n, 0);
    e[j] = 1;
    rows.insert(rows.end(), e.begin(), e.end());
  }
  const Subspace complement = span_of(F, n, rows);
  return Chart(P.field_ptr(), intersect(F, vertex_perp, complement));
}

PolarSpace quotient_base(const PolarSpace& P, const Subspace& vertex,
                         const Chart& chart) {
  SpaceDescriptor d = P.descriptor();
  d.rank -= vertex.dim();
  return PolarSpace(P.field_ptr(), d, P.form().restrict_to(P.field(), chart));
}

const Subspace& checked_vertex(const PolarSpace& P, const Subspace& vertex) {
  if (vertex.ambient() != P.n()) throw DomainError("vertex ambient mismatch");
  if (vertex.dim() < 1 || vertex.dim() >= P.rank()) {
    throw DomainError("quotient vertex must have dimension in [1, rank)");
  }
  if (!P.is_totally_isotropic(vertex)) {
    throw DomainError("quotient vertex is not totally isotropic");
  }
  return vertex;
}

}  // namespace

QuotientMap::QuotientMap(const PolarSpace& parent, const Subspace& vertex)
    : field_(parent.field_ptr()),
      vertex_(checked_vertex(parent, vertex)),
      vertex_perp_(parent.perp(vertex)),
      chart_(quotient_chart(parent, vertex_, vertex_perp_)),
      base_(quotient_base(parent, vertex_, chart_)) {}

Subspace QuotientMap::lift(const Subspace& sigma) const {
  return span_sum(*field_, chart_.embed(sigma), vertex_);
}

Subspace QuotientMap::project(const Subspace& tau) const {
  if (!is_subspace_of(*field_, vertex_, tau) ||
      !is_subspace_of(*field_, tau, vertex_perp_)) {
    throw DomainError("subspace does not lie between the vertex and its perp");
  }
  return chart_.coords(intersect(*field_, tau, chart_.frame()));
}

QuotientMap quotient_space(const PolarSpace& P, const Subspace& pi) {
  return QuotientMap(P, pi);
}

std::variant<Section, DegenerateSection> hyperplane_section(const PolarSpace& P,
                                                            const Subspace& H) {
  if (H.ambient() != P.n() || H.dim() != P.n() - 1) {
    throw DomainError("hyperplane must have dimension n-1");
  }
  Chart chart(P.field_ptr(), H);
  Form restricted = P.form().restrict_to(P.field(), chart);
  FormClass cls = classify_form(P.field(), restricted);
  if (cls.degenerate) {
    return DegenerateSection{H, chart.embed(cls.radical), cls.point_count};
  }
  return Section{PolarSpace(P.field_ptr(), cls.descriptor, std::move(restricted)),
                 std::move(chart)};
}

// ---------------------------------------------------------------------------
// Standardization

namespace {

std::vector<Elem> invert(const FieldTable& F, const std::vector<Elem>& m, int n) {
  std::vector<Elem> aug(static_cast<std::size_t>(n) * 2 * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[static_cast<std::size_t>(i) * 2 * n + j] = m[static_cast<std::size_t>(i) * n + j];
    aug[static_cast<std::size_t>(i) * 2 * n + n + i] = 1;
  }
  std::vector<int> piv;
  const int rank = row_reduce(F, aug, n, 2 * n, &piv);
  if (rank < n || piv[n - 1] != n - 1) throw std::logic_error("singular frame");
  std::vector<Elem> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = aug[static_cast<std::size_t>(i) * 2 * n + n + j];
  }
  return out;
}

Subspace transform(const FieldTable& F, const Subspace& S,
                   const std::vector<Elem>& m) {
  const int n = S.ambient();
  std::vector<Elem> rows;
  for (int i = 0; i < S.dim(); ++i) {
    auto x = S.row(i);
    for (int j = 0; j < n; ++j) {
      Elem acc = 0;
      for (int t = 0; t < n; ++t) {
        const Elem c = m[static_cast<std::size_t>(t) * n + j];
        if (x[t] != 0 && c != 0) acc = F.add(acc, F.mul(x[t], c));
      }
      rows.push_back(acc);
    }
  }
  return span_of(F, n, rows);
}

Vector scaled(const FieldTable& F, std::span<const Elem> v, Elem a) {
  Vector out(v.begin(), v.end());
  for (Elem& x : out) x = F.mul(x, a);
  return out;
}

// First vector of U (in lex order of chart coordinates) satisfying pred.
std::optional<Vector> find_in(const FieldTable& F, const FieldPtr& field,
                              const Subspace& U,
                              const std::function<bool(const Vector&)>& pred) {
  if (U.is_trivial()) return std::nullopt;
  Chart chart(field, U);
  std::optional<Vector> found;
  for_each_point(F, U.dim(), [&](const Vector& y) {
    if (found) return;
    Vector x = chart.embed(y);
    if (pred(x)) found = std::move(x);
  });
  return found;
}

}  // namespace

StandardFrame::StandardFrame(PolarSpace standard, std::vector<Elem> to_source,
                             std::vector<Elem> to_standard)
    : standard_(std::move(standard)),
      to_source_(std::move(to_source)),
      to_standard_(std::move(to_standard)) {}

Subspace StandardFrame::to_standard(const Subspace& S) const {
  return transform(standard_.field(), S, to_standard_);
}

Subspace StandardFrame::to_source(const Subspace& S) const {
  return transform(standard_.field(), S, to_source_);
}

StandardFrame standardize(const PolarSpace& P) {
  const FieldTable& F = P.field();
  const FieldPtr& field = P.field_ptr();
  const int n = P.n();
  PolarSpace target = PolarSpace::standard(P.descriptor());
  std::vector<Vector> pairs;  // u1, w1, u2, w2, ... (f(u,w) = 1 under Q)
  std::vector<Vector> head;   // anisotropic / orthonormal part
  Elem lambda = 1;
  Subspace U = Subspace::full(n);

  auto restrict_perp = [&](const std::vector<Vector>& vs) {
    Subspace span = rref_canonical(F, n, vs);
    U = intersect(F, U, P.perp(span));
  };

  switch (P.form().type()) {
    case FormType::kAlternating:
    case FormType::kQuadratic: {
      const bool quadric = P.form().type() == FormType::kQuadratic;
      while (true) {
        std::optional<Vector> u = quadric
            ? find_in(F, field, U, [&](const Vector& x) {
                return P.eval_quadratic(x) == 0 &&
                       !P.perp(rref_canonical(F, n, {x})).matrix().empty() &&
                       !is_subspace_of(F, U, P.perp(rref_canonical(F, n, {x})));
              })
            : (U.is_trivial() ? std::nullopt
                              : std::optional<Vector>(Vector(U.row(0).begin(), U.row(0).end())));
        if (!u) break;
        Vector w;
        for (int i = 0; i < U.dim(); ++i) {
          const Elem val = P.eval_form(*u, U.row(i));
          if (val != 0) {
            w = scaled(F, U.row(i), F.inv(val));
            break;
          }
        }
        if (quadric) {
          const Elem qw = P.eval_quadratic(w);
          for (int j = 0; j < n; ++j) w[j] = F.sub(w[j], F.mul(qw, (*u)[j]));
        }
        pairs.push_back(*u);
        pairs.push_back(w);
        restrict_perp({*u, w});
      }
      if (!quadric) break;
      if (U.dim() == 1) {
        const Elem c = P.eval_quadratic(U.row(0));
        Elem mu = 0;
        if (F.sqrt(F.inv(c), mu)) {
          head.push_back(scaled(F, U.row(0), mu));
        } else {
          lambda = F.inv(c);
          head.push_back(Vector(U.row(0).begin(), U.row(0).end()));
        }
      } else if (U.dim() == 2) {
        const Elem c0 = elliptic_constant(F);
        Chart chart(field, U);
        bool done = false;
        for (unsigned l = 1; l < F.q() && !done; ++l) {
          const Elem lam = static_cast<Elem>(l);
          for (unsigned a = 0; a < F.q() * F.q() && !done; ++a) {
            const Vector ya{static_cast<Elem>(a / F.q()), static_cast<Elem>(a % F.q())};
            const Vector xa = chart.embed(ya);
            if (F.mul(lam, P.eval_quadratic(xa)) != 1) continue;
            for (unsigned b = 0; b < F.q() * F.q() && !done; ++b) {
              const Vector yb{static_cast<Elem>(b / F.q()), static_cast<Elem>(b % F.q())};
              const Vector xb = chart.embed(yb);
              if (F.mul(lam, P.eval_form(xa, xb)) == 1 &&
                  F.mul(lam, P.eval_quadratic(xb)) == c0) {
                head = {xa, xb};
                lambda = lam;
                done = true;
              }
            }
          }
        }
        if (!done) throw std::logic_error("anisotropic part not similar to standard");
      } else if (U.dim() != 0) {
        throw std::logic_error("anisotropic part of unexpected dimension");
      }
      // Under lambda*Q the pairs need f(u, w') = 1.
      const Elem inv_lambda = F.inv(lambda);
      for (std::size_t i = 1; i < pairs.size(); i += 2) pairs[i] = scaled(F, pairs[i], inv_lambda);
      break;
    }
    case FormType::kHermitian: {
      while (!U.is_trivial()) {
        auto v = find_in(F, field, U, [&](const Vector& x) { return P.eval_form(x, x) != 0; });
        if (!v) throw std::logic_error("no anisotropic vector in Hermitian space");
        const Elem c = P.eval_form(*v, *v);
        Elem mu = 0;
        for (unsigned m = 1; m < F.q(); ++m) {
          const Elem x = static_cast<Elem>(m);
          if (F.mul(F.mul(x, F.conj(x)), c) == 1) {
            mu = x;
            break;
          }
        }
        Vector b = scaled(F, *v, mu);
        head.push_back(b);
        restrict_perp({b});
      }
      break;
    }
  }

  std::vector<Elem> basis;
  for (const auto& v : head) basis.insert(basis.end(), v.begin(), v.end());
  for (const auto& v : pairs) basis.insert(basis.end(), v.begin(), v.end());
  if (basis.size() != static_cast<std::size_t>(n) * n) {
    throw std::logic_error("standardization did not produce a full basis");
  }
  // Self-check against the standard equation.
  Form scaled_form = P.form();
  for (int i = 0; i < n; ++i) {
    std::span<const Elem> bi(basis.data() + static_cast<std::size_t>(i) * n, n);
    Vector ei(n, 0);
    ei[i] = 1;
    if (P.form().type() == FormType::kQuadratic &&
        F.mul(lambda, P.eval_quadratic(bi)) != target.eval_quadratic(ei)) {
      throw std::logic_error("standardization failed (quadratic values)");
    }
    for (int j = 0; j < n; ++j) {
      std::span<const Elem> bj(basis.data() + static_cast<std::size_t>(j) * n, n);
      Vector ej(n, 0);
      ej[j] = 1;
      if (F.mul(lambda, P.eval_form(bi, bj)) != target.eval_form(ei, ej)) {
        throw std::logic_error("standardization failed (form values)");
      }
    }
  }
  std::vector<Elem> inverse = invert(F, basis, n);
  return StandardFrame(std::move(target), std::move(basis), std::move(inverse));
}

}  // namespace polarcover
