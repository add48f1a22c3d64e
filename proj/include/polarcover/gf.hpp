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

#ifndef POLARCOVER_GF_HPP_
#define POLARCOVER_GF_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace polarcover {

/// A field element, encoded as the integer sum c_i p^i of the coefficients of
/// its polynomial representative.
using Elem = std::uint16_t;

/// Arithmetic in GF(p^h) for p^h <= 2^16.
///
/// The field is GF(p)[x]/(m(x)) where m is the monic irreducible polynomial
/// of degree h whose lower coefficients, read as a base-p integer, are
/// smallest. No compatibility between different extensions is attempted.
///
/// Fields of order <= 256 keep full q x q addition and multiplication
/// tables; larger fields multiply through log/antilog tables and add
/// digit-wise. A FieldTable is immutable once built.
class FieldTable {
 public:
  /// Throws DomainError if p is not prime, h < 1 or p^h > 2^16.
  FieldTable(unsigned p, unsigned h);

  /// Parses the descriptor "p^h" (a bare "q" for a prime is also accepted).
  static FieldTable parse(std::string_view descriptor);
  /// Builds GF(q) for a prime power q; throws otherwise.
  static FieldTable for_order(unsigned q);

  unsigned p() const { return p_; }
  unsigned h() const { return h_; }
  unsigned q() const { return q_; }
  bool is_prime_field() const { return h_ == 1; }
  /// Coefficients m_0..m_h of the modulus (m_h = 1).
  const std::vector<unsigned>& modulus() const { return modulus_; }
  /// "p^h"
  std::string descriptor() const;

  Elem add(Elem a, Elem b) const {
    return add_.empty() ? add_digits(a, b) : add_[a * q_ + b];
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (!mul_.empty()) return mul_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DomainError on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// x -> x^p.
  Elem frobenius(Elem a) const { return pow(a, p_); }
  bool has_conjugation() const { return h_ % 2 == 0; }
  /// x -> x^sqrt(q); throws DomainError when h is odd.
  Elem conj(Elem a) const;
  /// Trace to the prime field, returned as an element of GF(p) (< p).
  Elem trace(Elem a) const;
  /// Some generator of the multiplicative group.
  Elem primitive() const { return primitive_; }

  /// Square root in characteristic 2 (unique), or any root otherwise;
  /// returns false if none exists.
  bool sqrt(Elem a, Elem& root) const;

  /// Polynomial coefficients c_0..c_{h-1} of a.
  std::vector<unsigned> digits(Elem a) const;
  /// Inverse of digits(); throws DomainError on a bad digit list.
  Elem from_digits(const std::vector<unsigned>& digits) const;
  /// Range-checked conversion from an integer code.
  Elem from_int(long long code) const;

 private:
  Elem add_digits(Elem a, Elem b) const;

  unsigned p_ = 0;
  unsigned h_ = 0;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;  // inv_[0] == q_ (sentinel)
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;  // length 2(q-1)
  Elem primitive_ = 1;
};

using FieldPtr = std::shared_ptr<const FieldTable>;

inline FieldPtr make_field(unsigned p, unsigned h) {
  return std::make_shared<const FieldTable>(p, h);
}

/// True iff n is prime.
bool is_prime(unsigned n);
/// Splits q = p^h; returns false if q is not a prime power.
bool prime_power(unsigned q, unsigned& p, unsigned& h);

}  // namespace polarcover

#endif  // POLARCOVER_GF_HPP_
