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

#ifndef POLARCOVER_POLAR_SPACE_HPP_
#define POLARCOVER_POLAR_SPACE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polarcover/gf.hpp"
#include "polarcover/linalg.hpp"

namespace polarcover {

/// The six families of finite classical polar spaces.
enum class Kind {
  kHyperbolic,     // Q+(2r-1,q) on V(2r,q)
  kParabolic,      // Q(2r,q) on V(2r+1,q)
  kElliptic,       // Q-(2r+1,q) on V(2r+2,q)
  kHermitianOdd,   // H(2r-1,q) on V(2r,q), q square
  kHermitianEven,  // H(2r,q) on V(2r+1,q), q square
  kSymplectic,     // W(2r-1,q) on V(2r,q)
};

std::string_view kind_name(Kind kind);
bool is_quadric(Kind kind);
bool is_hermitian(Kind kind);
/// Vector dimension of the rank-r space of this kind.
int ambient_dim(Kind kind, int rank);
/// Twice the parameter e (0, 1, 2, 2, 3, 4 for Q+, H odd, W, Q, H even, Q-).
int twice_e(Kind kind);

struct SpaceDescriptor {
  Kind kind = Kind::kHyperbolic;
  int rank = 0;
  unsigned q = 0;

  int n() const { return ambient_dim(kind, rank); }
  int e2() const { return twice_e(kind); }
  /// "Q+(5,2)", "H(3,4)", ...
  std::string to_string() const;

  /// Grammar: "Q+(m,q)" | "Q(m,q)" | "Q-(m,q)" | "H(m,q)" | "W(m,q)" where
  /// m = n - 1 is the projective dimension. Throws ParseError / DomainError.
  static SpaceDescriptor parse(std::string_view text);

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

enum class FormType { kQuadratic, kHermitian, kAlternating };

/// Coefficient data of a form on V(n,q).
///
/// kQuadratic: upper-triangular c_ij, Q(x) = sum_{i<=j} c_ij x_i x_j, with
/// polarization f(x,y) = Q(x+y) - Q(x) - Q(y).
/// kHermitian: Gram matrix H, f(x,y) = sum x_i H_ij conj(y_j).
/// kAlternating: Gram matrix A, f(x,y) = sum x_i A_ij y_j.
class Form {
 public:
  Form() = default;
  Form(FormType type, int n, std::vector<Elem> coeffs);

  FormType type() const { return type_; }
  int n() const { return n_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  Elem coeff(int i, int j) const { return coeffs_[static_cast<std::size_t>(i) * n_ + j]; }

  /// f(v,w).
  Elem eval(const FieldTable& F, std::span<const Elem> v, std::span<const Elem> w) const;
  /// Q(v); throws for non-quadratic forms.
  Elem eval_quadratic(const FieldTable& F, std::span<const Elem> v) const;
  /// Q(v) = 0, f(v,v) = 0, or true for alternating forms.
  bool is_singular(const FieldTable& F, std::span<const Elem> v) const;
  /// Coefficients c with f(s,x) = 0 <=> sum c_j x_j = 0.
  Vector functional(const FieldTable& F, std::span<const Elem> s) const;
  /// The form pulled back to the coordinates of `chart`.
  Form restrict_to(const FieldTable& F, const Chart& chart) const;

  friend bool operator==(const Form&, const Form&) = default;

 private:
  struct Term {
    int i;
    int j;
    Elem c;
    friend bool operator==(const Term&, const Term&) = default;
  };

  FormType type_ = FormType::kQuadratic;
  int n_ = 0;
  std::vector<Elem> coeffs_;
  std::vector<Term> q_terms_; // nonzero c_ij of a quadratic form
  std::vector<Term> g_terms_; // nonzero Gram entries
};

/// Standard equation of a kind: the coefficients used by make_space.
Form standard_form(const FieldTable& F, const SpaceDescriptor& d);
/// The c of the elliptic part X0^2 + X0X1 + cX1^2: smallest code making it
/// irreducible over F.
Elem elliptic_constant(const FieldTable& F);

/// Outcome of classifying a form by its radical and its number of singular
/// points.
struct FormClass {
  bool degenerate = false;
  /// Valid when !degenerate. An anisotropic binary quadric reports kElliptic
  /// with rank 0.
  SpaceDescriptor descriptor;
  /// Singular radical (for quadrics: radical vectors with Q = 0).
  Subspace radical;
  std::uint64_t point_count = 0;
};

FormClass classify_form(const FieldTable& F, const Form& form,
                        const EnumerationBudget& budget = {});

/// A finite classical polar space: a non-degenerate form plus derived data.
///
/// The form need not be the standard one (quotients, hyperplane sections and
/// field-reduced forms carry their own coordinates); make_space always
/// yields the standard equation.
class PolarSpace {
 public:
  /// Throws DomainError when the form is degenerate, or when its type or
  /// dimension does not match the descriptor.
  PolarSpace(FieldPtr field, SpaceDescriptor descriptor, Form form);

  /// Standard model of a descriptor such as "W(5,2)".
  static PolarSpace make(std::string_view descriptor);
  static PolarSpace standard(const SpaceDescriptor& descriptor);

  const SpaceDescriptor& descriptor() const { return desc_; }
  const FieldTable& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Form& form() const { return form_; }
  /// Radical point of the polarized form of a parabolic quadric in even
  /// characteristic.
  const std::optional<Vector>& nucleus() const { return nucleus_; }
  bool is_standard() const { return standard_; }

  int n() const { return desc_.n(); }
  int rank() const { return desc_.rank; }
  int e2() const { return desc_.e2(); }
  unsigned q() const { return desc_.q; }

  Elem eval_form(std::span<const Elem> v, std::span<const Elem> w) const;
  Elem eval_quadratic(std::span<const Elem> v) const;
  bool is_singular(std::span<const Elem> v) const;

  bool is_totally_isotropic(const Subspace& S) const;
  /// Orthogonal complement with respect to the (polarized) form.
  Subspace perp(const Subspace& S) const;

  /// Every totally isotropic k-space once, sorted. 1 <= k <= rank.
  std::vector<Subspace> enumerate_ti(int k, const EnumerationBudget& budget = {}) const;
  std::vector<Subspace> generators(const EnumerationBudget& budget = {}) const {
    return enumerate_ti(rank(), budget);
  }
  /// All generators containing S (sorted). Throws if S is not totally
  /// isotropic.
  std::vector<Subspace> generators_through(const Subspace& S,
                                           const EnumerationBudget& budget = {}) const;

 private:
  void require_ambient(std::size_t len) const;
  void require_ambient(const Subspace& S) const;

  FieldPtr field_;
  SpaceDescriptor desc_;
  Form form_;
  std::optional<Vector> nucleus_;
  bool standard_ = false;
};

inline PolarSpace make_space(std::string_view descriptor) {
  return PolarSpace::make(descriptor);
}

/// The base of the tangent cone of a totally isotropic subspace pi: the
/// space pi^perp / pi, realized on a complement W of pi inside pi^perp.
class QuotientMap {
 public:
  QuotientMap(const PolarSpace& parent, const Subspace& vertex);

  const PolarSpace& base() const { return base_; }
  const Subspace& vertex() const { return vertex_; }
  const Chart& chart() const { return chart_; }

  /// sigma (base coordinates) -> <vertex, sigma> in the parent.
  Subspace lift(const Subspace& sigma) const;
  /// tau (parent, vertex <= tau <= vertex^perp) -> tau / vertex in base
  /// coordinates. Throws DomainError otherwise.
  Subspace project(const Subspace& tau) const;

 private:
  FieldPtr field_;
  Subspace vertex_;
  Subspace vertex_perp_;
  Chart chart_;
  PolarSpace base_;
};

/// Requires pi totally isotropic with 1 <= dim(pi) < rank.
QuotientMap quotient_space(const PolarSpace& P, const Subspace& pi);

/// Non-degenerate hyperplane section, in coordinates of the hyperplane.
struct Section {
  PolarSpace space;
  Chart chart;

  Subspace lift(const Subspace& S) const { return chart.embed(S); }
  Subspace to_section(const Subspace& S) const { return chart.coords(S); }
};

struct DegenerateSection {
  Subspace hyperplane;
  Subspace radical;  // ambient coordinates
  std::uint64_t point_count = 0;
};

/// Restricts P to the hyperplane H (dim n-1) and classifies the result.
std::variant<Section, DegenerateSection> hyperplane_section(
    const PolarSpace& P, const Subspace& H);

/// A similarity onto the standard model: rows of `to_source` are the images
/// of the standard basis vectors, and the form in these coordinates is a
/// nonzero scalar multiple of the standard equation.
class StandardFrame {
 public:
  StandardFrame(PolarSpace standard, std::vector<Elem> to_source,
                std::vector<Elem> to_standard);

  const PolarSpace& standard() const { return standard_; }
  Subspace to_standard(const Subspace& S) const;
  Subspace to_source(const Subspace& S) const;

 private:
  PolarSpace standard_;
  std::vector<Elem> to_source_;
  std::vector<Elem> to_standard_;
};

/// Finds a basis in which the form of P is a scalar multiple of the
/// standard equation of its kind.
StandardFrame standardize(const PolarSpace& P);

}  // namespace polarcover

#endif  // POLARCOVER_POLAR_SPACE_HPP_
