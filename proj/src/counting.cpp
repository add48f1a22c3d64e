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

#include "polarcover/counting.hpp"

#include <sstream>

#include "polarcover/error.hpp"

namespace polarcover {

namespace {

BigInt ipow(const BigInt& b, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

void require_q(unsigned q) {
  unsigned p = 0;
  unsigned h = 0;
  if (!prime_power(q, p, h)) throw DomainError(std::to_string(q) + " is not a prime power");
}

}  // namespace

HalfExpInt::HalfExpInt(unsigned q) : q_(q) {
  require_q(q);
  for (unsigned t = 2; t * t <= q; ++t) {
    if (t * t == q) root_ = t;
  }
}

BigInt HalfExpInt::pow(int twice) const {
  if (twice < 0) throw DomainError("negative exponent");
  if (twice % 2 == 0) return ipow(BigInt(q_), static_cast<unsigned>(twice / 2));
  if (!is_square()) {
    throw DomainError("half-integer exponent needs a square q, got " + std::to_string(q_));
  }
  return ipow(BigInt(root_), static_cast<unsigned>(twice));
}

BigInt gaussian_binomial(int a, int b, unsigned q) {
  if (a < 0 || b < 0) throw DomainError("negative Gaussian binomial argument");
  if (q < 2) throw DomainError("Gaussian binomial needs q >= 2");
  if (b > a) return 0;
  BigInt num = 1;
  BigInt den = 1;
  const BigInt Q = q;
  for (int i = 1; i <= b; ++i) {
    num *= ipow(Q, static_cast<unsigned>(a - b + i)) - 1;
    den *= ipow(Q, static_cast<unsigned>(i)) - 1;
  }
  return num / den;
}

BigInt ovoid_size(int r, int k, int e2, unsigned q) {
  if (k < 1 || k > r) throw DomainError("need 1 <= k <= r");
  const HalfExpInt Q(q);
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out *= Q.pow(2 * (r - i) + e2) + 1;
  return out;
}

BigInt count_ti(int r, int k, int e2, unsigned q) {
  return gaussian_binomial(r, k, q) * ovoid_size(r, k, e2, q);
}

BigInt count_ti(Kind kind, int r, int k, unsigned q) {
  return count_ti(r, k, twice_e(kind), q);
}

Rational degenerate_hyperplane_fraction(int r, int k, int e2, unsigned q) {
  if (k < 1 || r < k + 1) throw DomainError("need r >= k+1 >= 2");
  const HalfExpInt Q(q);
  const BigInt num = Q.pow(2 * (2 * r - k - 1) + e2) + Q.pow(2 * r) -
                     Q.pow(2 * (r - 1) + e2) - 1;
  const BigInt den = (Q.pow(2 * r) - 1) * (Q.pow(2 * (r - 1) + e2) + 1);
  return Rational(num, den);
}

BmBound bm_bound(unsigned p, unsigned h, int n) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (h < 1 || n < 2) throw DomainError("need h >= 1 and n >= 2");
  BmBound b;
  b.strong = ipow(binomial(p + n - 2, p - 1), h) + 1;
  b.weak = ipow(BigInt(p + n - 1), h * (p - 1)) + 1;
  return b;
}

BoundReport partial_rk_ovoid_bound(unsigned p, unsigned h, int r, int k, int e2) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (h < 1) throw DomainError("need h >= 1");
  if (k < 1 || r < k + 1) throw DomainError("need r >= k+1 and k >= 1");
  BoundReport rep;
  rep.formula = "prod_{i=1}^{k-1} (q^{r-i+1}-1)(q^{r+e-i}+1) / ((q^{i+1}-1) q^{2r+e-k-i})"
                " * (p+2r-2k+3)^{kh(p-1)}";
  rep.p = p;
  rep.h = h;
  rep.q = static_cast<unsigned>(ipow(BigInt(p), h));
  rep.r = r;
  rep.k = k;
  rep.e2 = e2;
  const HalfExpInt Q(rep.q);
  rep.product = 1;
  for (int i = 1; i <= k - 1; ++i) {
    const BigInt num = (Q.pow(2 * (r - i + 1)) - 1) * (Q.pow(2 * (r - i) + e2) + 1);
    const BigInt den = (Q.pow(2 * (i + 1)) - 1) * Q.pow(2 * (2 * r - k - i) + e2);
    rep.product *= Rational(num, den);
  }
  rep.power = ipow(BigInt(p + 2 * r - 2 * k + 3), static_cast<unsigned>(k) * h * (p - 1));
  rep.bound = rep.product * Rational(rep.power);
  rep.bound_floor = numerator(rep.bound) / denominator(rep.bound);
  rep.cap = ipow(BigInt(2), static_cast<unsigned>(k - 1)) * rep.power;
  rep.within_cap = rep.bound <= Rational(rep.cap);
  return rep;
}

ThresholdReport nonexistence_rank_threshold(unsigned p, int k, int e2, int window,
                                            int max_rank) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (k < 1) throw DomainError("need k >= 1");
  if (e2 < 0 || e2 > 4) throw DomainError("e2 must be in 0..4");
  if (window < 0) throw DomainError("window must be >= 0");
  ThresholdReport rep;
  rep.p = p;
  rep.k = k;
  rep.e2 = e2;
  rep.window = window;
  const unsigned h = e2 % 2 == 0 ? 1 : 2;
  const unsigned q = static_cast<unsigned>(ipow(BigInt(p), h));
  auto ratio = [&](int r) {
    const auto b = partial_rk_ovoid_bound(p, h, r, k, e2);
    return Rational(ovoid_size(r, k, e2, q)) / b.bound;
  };
  int run_start = k + 1;
  int run = 0;
  for (int r = k + 1; r <= max_rank + window; ++r) {
    if (ratio(r) > 1) {
      if (run == 0) run_start = r;
      if (++run == window + 1) {
        rep.r_star = run_start;
        break;
      }
    } else {
      run = 0;
    }
  }
  if (!rep.r_star || *rep.r_star > max_rank) {
    rep.r_star.reset();
    return rep;
  }
  rep.ratios_increasing = true;
  for (int r = *rep.r_star; r <= *rep.r_star + window; ++r) {
    rep.ratios.push_back(ratio(r));
    if (rep.ratios.size() > 1 && !(rep.ratios.back() > rep.ratios[rep.ratios.size() - 2])) {
      rep.ratios_increasing = false;
    }
  }
  return rep;
}

SchrijverBound schrijver_bound(int v, int deg) {
  if (v < 1 || deg < 2) throw DomainError("need v >= 1 and deg >= 2");
  const Rational base(ipow(BigInt(deg - 1), static_cast<unsigned>(deg - 1)),
                      ipow(BigInt(deg), static_cast<unsigned>(deg - 2)));
  SchrijverBound out;
  out.value = 1;
  for (int i = 0; i < v; ++i) out.value *= base;
  out.floor = numerator(out.value) / denominator(out.value);
  return out;
}

std::string to_text(const Rational& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

std::string to_decimal(const Rational& x, int digits) {
  BigInt num = numerator(x);
  const BigInt den = denominator(x);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  const BigInt scale = ipow(BigInt(10), static_cast<unsigned>(digits));
  const BigInt scaled = (num * scale * 2 + den) / (den * 2);  // rounded
  const BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  if (digits == 0) return sign + whole.str();
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return sign + whole.str() + "." + frac;
}

}  // namespace polarcover
