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

#include "polarcover/gf.hpp"

#include <charconv>

#include "polarcover/error.hpp"

namespace polarcover {
namespace {

constexpr unsigned kMaxOrder = 1u << 16;
constexpr unsigned kFullTableOrder = 256;

using Poly = std::vector<unsigned>;  // low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod m over GF(p), m monic.
Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const unsigned lead = a.back();
    const size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return out;
}

// Monic polynomial of degree d whose lower coefficients are the base-p
// digits of `code`.
Poly monic_from_code(unsigned code, unsigned d, unsigned p) {
  Poly f(d + 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[d] = 1;
  return f;
}

unsigned ipow(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    const unsigned count = ipow(p, d);
    for (unsigned c = 0; c < count; ++c) {
      if (poly_mod(f, monic_from_code(c, d, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool prime_power(unsigned q, unsigned& p, unsigned& h) {
  if (q < 2) return false;
  unsigned d = 2;
  while (q % d != 0) ++d;
  unsigned e = 0;
  unsigned rest = q;
  while (rest % d == 0) {
    rest /= d;
    ++e;
  }
  if (rest != 1) return false;
  p = d;
  h = e;
  return true;
}

FieldTable::FieldTable(unsigned p, unsigned h) : p_(p), h_(h) {
  if (!is_prime(p)) {
    throw DomainError("field characteristic " + std::to_string(p) +
                      " is not prime");
  }
  if (h < 1) throw DomainError("field extension degree must be >= 1");
  unsigned long long q = 1;
  for (unsigned i = 0; i < h; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw DomainError("field order " + std::to_string(p) + "^" +
                        std::to_string(h) + " exceeds 2^16");
    }
  }
  q_ = static_cast<unsigned>(q);

  for (unsigned code = 0;; ++code) {
    Poly f = monic_from_code(code, h, p);
    if (irreducible(f, p)) {
      modulus_ = std::move(f);
      break;
    }
  }

  auto to_poly = [&](unsigned a) {
    Poly out(h, 0);
    for (unsigned i = 0; i < h; ++i) {
      out[i] = a % p;
      a /= p;
    }
    trim(out);
    return out;
  };
  auto from_poly = [&](const Poly& a) {
    unsigned v = 0;
    for (size_t i = a.size(); i-- > 0;) v = v * p + a[i];
    return static_cast<Elem>(v);
  };
  auto slow_mul = [&](unsigned a, unsigned b) {
    return from_poly(poly_mod(poly_mul(to_poly(a), to_poly(b), p), modulus_, p));
  };

  neg_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    Poly d = to_poly(a);
    for (auto& c : d) c = (p - c) % p;
    neg_[a] = from_poly(d);
  }

  // Primitive element and log/antilog tables.
  for (unsigned g = 2; q_ > 2 && g < q_; ++g) {
    unsigned x = g;
    unsigned order = 1;
    while (x != 1) {
      x = slow_mul(x, g);
      ++order;
    }
    if (order == q_ - 1) {
      primitive_ = static_cast<Elem>(g);
      break;
    }
  }
  log_.assign(q_, 0);
  exp_.assign(2 * (q_ - 1), 0);
  unsigned x = 1;
  for (unsigned i = 0; i < q_ - 1; ++i) {
    exp_[i] = static_cast<Elem>(x);
    exp_[i + q_ - 1] = static_cast<Elem>(x);
    log_[x] = i;
    x = slow_mul(x, primitive_);
  }

  inv_.assign(q_, static_cast<Elem>(q_));
  for (unsigned a = 1; a < q_; ++a) {
    inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  if (q_ <= kFullTableOrder) {
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    for (unsigned a = 0; a < q_; ++a) {
      for (unsigned b = 0; b < q_; ++b) {
        add_[a * q_ + b] = add_digits(static_cast<Elem>(a), static_cast<Elem>(b));
        mul_[a * q_ + b] =
            (a == 0 || b == 0) ? 0 : exp_[log_[a] + log_[b]];
      }
    }
  }
}

FieldTable FieldTable::parse(std::string_view text) {
  auto number = [&](std::string_view s) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("bad field descriptor '" + std::string(text) + "'");
    }
    return v;
  };
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return for_order(number(text));
  return FieldTable(number(text.substr(0, caret)), number(text.substr(caret + 1)));
}

FieldTable FieldTable::for_order(unsigned q) {
  unsigned p = 0;
  unsigned h = 0;
  if (!prime_power(q, p, h)) {
    throw DomainError(std::to_string(q) + " is not a prime power");
  }
  return FieldTable(p, h);
}

std::string FieldTable::descriptor() const {
  return std::to_string(p_) + "^" + std::to_string(h_);
}

Elem FieldTable::add_digits(Elem a, Elem b) const {
  unsigned out = 0;
  unsigned scale = 1;
  unsigned x = a;
  unsigned y = b;
  for (unsigned i = 0; i < h_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(out);
}

Elem FieldTable::inv(Elem a) const {
  if (a == 0 || a >= q_) throw DomainError("inverse of zero");
  return inv_[a];
}

Elem FieldTable::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

Elem FieldTable::conj(Elem a) const {
  if (!has_conjugation()) {
    throw DomainError("GF(" + std::to_string(q_) +
                      ") has no involutory automorphism (h odd)");
  }
  return pow(a, ipow(p_, h_ / 2));
}

Elem FieldTable::trace(Elem a) const {
  Elem t = 0;
  Elem x = a;
  for (unsigned i = 0; i < h_; ++i) {
    t = add(t, x);
    x = frobenius(x);
  }
  return t;
}

bool FieldTable::sqrt(Elem a, Elem& root) const {
  for (unsigned x = 0; x < q_; ++x) {
    if (mul(static_cast<Elem>(x), static_cast<Elem>(x)) == a) {
      root = static_cast<Elem>(x);
      return true;
    }
  }
  return false;
}

std::vector<unsigned> FieldTable::digits(Elem a) const {
  std::vector<unsigned> out(h_);
  unsigned x = a;
  for (unsigned i = 0; i < h_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

Elem FieldTable::from_digits(const std::vector<unsigned>& digits) const {
  if (digits.size() > h_) throw DomainError("too many digits for GF(q)");
  unsigned v = 0;
  for (size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p_) throw DomainError("digit out of range");
    v = v * p_ + digits[i];
  }
  return static_cast<Elem>(v);
}

Elem FieldTable::from_int(long long code) const {
  if (code < 0 || code >= static_cast<long long>(q_)) {
    throw DomainError("element code " + std::to_string(code) +
                      " out of range for GF(" + std::to_string(q_) + ")");
  }
  return static_cast<Elem>(code);
}

}  // namespace polarcover
