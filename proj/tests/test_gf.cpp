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

#include <vector>

#include "doctest.h"
#include "polarcover/error.hpp"
#include "polarcover/gf.hpp"

using namespace polarcover;

namespace {

// Schoolbook polynomial product mod (modulus) over GF(p), on digit codes.
unsigned slow_mul(const FieldTable& F, unsigned a, unsigned b) {
  const unsigned p = F.p();
  const unsigned h = F.h();
  std::vector<unsigned> prod(2 * h, 0);
  auto da = F.digits(static_cast<Elem>(a));
  auto db = F.digits(static_cast<Elem>(b));
  for (unsigned i = 0; i < h; ++i)
    for (unsigned j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  const auto& m = F.modulus();
  for (unsigned d = 2 * h - 1; d >= h; --d) {
    const unsigned lead = prod[d];
    for (unsigned i = 0; i <= h; ++i)
      prod[d - h + i] = (prod[d - h + i] + p * p - lead * m[i] % p) % p;
  }
  prod.resize(h);
  return F.from_digits(prod);
}

}  // namespace

TEST_CASE("small prime fields") {
  FieldTable f2(2, 1);
  CHECK(f2.add(1, 1) == 0);
  FieldTable f3(3, 1);
  CHECK(f3.mul(2, 2) == 1);
  CHECK(f3.neg(1) == 2);
}

TEST_CASE("GF(4) modulus and multiplication") {
  FieldTable f4(2, 2);
  CHECK(f4.modulus() == std::vector<unsigned>{1, 1, 1});
  CHECK(f4.mul(2, 2) == 3);
  CHECK(f4.descriptor() == "2^2");
}

TEST_CASE("field axioms exhaustively for q <= 16") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    const FieldTable F = FieldTable::for_order(q);
    CAPTURE(q);
    for (unsigned a = 0; a < q; ++a) {
      CHECK(F.add(static_cast<Elem>(a), F.neg(static_cast<Elem>(a))) == 0);
      if (a != 0) CHECK(F.mul(static_cast<Elem>(a), F.inv(static_cast<Elem>(a))) == 1);
      for (unsigned b = 0; b < q; ++b) {
        const Elem x = static_cast<Elem>(a);
        const Elem y = static_cast<Elem>(b);
        CHECK(F.add(x, y) == F.add(y, x));
        CHECK(F.mul(x, y) == F.mul(y, x));
        CHECK(F.mul(x, y) == slow_mul(F, a, b));
        for (unsigned c = 0; c < q; ++c) {
          const Elem z = static_cast<Elem>(c);
          CHECK(F.add(F.add(x, y), z) == F.add(x, F.add(y, z)));
          CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
          CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
        }
      }
    }
    // The multiplicative group is cyclic: the primitive element has order q-1.
    unsigned order = 1;
    for (Elem g = F.primitive(); g != 1; g = F.mul(g, F.primitive())) ++order;
    CHECK(order == q - 1);
  }
}

TEST_CASE("modulus is the smallest monic irreducible") {
  for (unsigned q : {4u, 8u, 9u, 16u, 25u, 27u}) {
    const FieldTable F = FieldTable::for_order(q);
    const unsigned p = F.p();
    const unsigned h = F.h();
    unsigned code = 0;
    for (unsigned i = h; i-- > 0;) code = code * p + F.modulus()[i];
    // Every smaller monic polynomial of degree h has a root or a factor; for
    // h <= 3 a root suffices, for h = 2k we check by brute force over GF(p).
    for (unsigned c = 0; c < code; ++c) {
      std::vector<unsigned> f(h + 1, 0);
      unsigned t = c;
      for (unsigned i = 0; i < h; ++i) f[i] = t % p, t /= p;
      f[h] = 1;
      bool reducible = false;
      // Any monic factor of degree d <= h/2.
      for (unsigned d = 1; 2 * d <= h && !reducible; ++d) {
        unsigned count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (unsigned g = 0; g < count && !reducible; ++g) {
          std::vector<unsigned> div(d + 1, 0);
          unsigned u = g;
          for (unsigned i = 0; i < d; ++i) div[i] = u % p, u /= p;
          div[d] = 1;
          std::vector<unsigned> r = f;
          for (int k = static_cast<int>(h); k >= static_cast<int>(d); --k) {
            const unsigned lead = r[k];
            for (unsigned i = 0; i <= d; ++i)
              r[k - d + i] = (r[k - d + i] + p * p - lead * div[i] % p) % p;
          }
          bool zero = true;
          for (unsigned i = 0; i < d; ++i) zero = zero && r[i] == 0;
          reducible = zero;
        }
      }
      CHECK(reducible);
    }
  }
}

TEST_CASE("conjugation") {
  FieldTable f4(2, 2);
  CHECK(f4.conj(0) == 0);
  CHECK(f4.conj(1) == 1);
  CHECK(f4.conj(2) == 3);
  CHECK(f4.conj(3) == 2);
  for (unsigned q : {4u, 9u, 16u}) {
    const FieldTable F = FieldTable::for_order(q);
    unsigned fixed = 0;
    for (unsigned a = 0; a < q; ++a) {
      const Elem x = static_cast<Elem>(a);
      CHECK(F.conj(F.conj(x)) == x);
      Elem fr = x;
      for (unsigned i = 0; i < F.h() / 2; ++i) fr = F.frobenius(fr);
      CHECK(F.conj(x) == fr);
      for (unsigned b = 0; b < q; ++b) {
        const Elem y = static_cast<Elem>(b);
        CHECK(F.conj(F.mul(x, y)) == F.mul(F.conj(x), F.conj(y)));
        CHECK(F.conj(F.add(x, y)) == F.add(F.conj(x), F.conj(y)));
      }
      if (F.conj(x) == x) ++fixed;
    }
    unsigned root = 1;
    while (root * root < q) ++root;
    CHECK(fixed == root);
  }
  CHECK_THROWS_AS(FieldTable(2, 3).conj(1), DomainError);
}

TEST_CASE("element codec") {
  FieldTable f4(2, 2);
  CHECK(f4.from_digits({1, 1}) == 3);
  FieldTable f9(3, 2);
  CHECK(f9.from_digits({1, 2}) == 7);
  FieldTable f2(2, 1);
  for (int a = 0; a < 2; ++a) CHECK(f2.from_int(a) == a);
  CHECK_THROWS_AS(f4.from_int(4), DomainError);
  CHECK_THROWS_AS(f4.from_int(-1), DomainError);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(FieldTable(4, 1), DomainError);
  CHECK_THROWS_AS(FieldTable(2, 17), DomainError);
  CHECK_THROWS_AS(FieldTable::parse("6^1"), DomainError);
  CHECK_THROWS_AS(FieldTable::parse("x"), ParseError);
  CHECK(FieldTable::parse("3^2").q() == 9);
  CHECK(FieldTable::parse("7").q() == 7);
}

TEST_CASE("trace lands in the prime field and is additive") {
  const FieldTable F = FieldTable::for_order(16);
  unsigned ones = 0;
  for (unsigned a = 0; a < 16; ++a) {
    const Elem t = F.trace(static_cast<Elem>(a));
    CHECK(t < 2);
    ones += t;
  }
  CHECK(ones == 8);
}
