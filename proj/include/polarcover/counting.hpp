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

#ifndef POLARCOVER_COUNTING_HPP_
#define POLARCOVER_COUNTING_HPP_

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polarcover/polar_space.hpp"

namespace polarcover {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact powers q^{x/2}. Odd x needs q to be a square.
class HalfExpInt {
 public:
  explicit HalfExpInt(unsigned q);

  unsigned q() const { return q_; }
  bool is_square() const { return root_ != 0; }
  /// q^{twice / 2}; twice >= 0. Throws DomainError for odd `twice` when q
  /// is not a square.
  BigInt pow(int twice) const;

 private:
  unsigned q_;
  unsigned root_ = 0;
};

/// Number of b-spaces of V(a,q); 0 when b > a.
BigInt gaussian_binomial(int a, int b, unsigned q);

/// Number of totally isotropic k-spaces of a rank r space with parameter
/// e = e2/2: qbin(r,k) prod_{i=1}^k (q^{r+e-i} + 1).
BigInt count_ti(int r, int k, int e2, unsigned q);
BigInt count_ti(Kind kind, int r, int k, unsigned q);

/// Size of any (r,k)-ovoid: prod_{i=1}^k (q^{r+e-i} + 1).
BigInt ovoid_size(int r, int k, int e2, unsigned q);

/// Share of the k-spaces that lie in a degenerate hyperplane, in lowest
/// terms. Requires r >= k+1.
Rational degenerate_hyperplane_fraction(int r, int k, int e2, unsigned q);

struct BmBound {
  BigInt strong;  // C(p+n-2, p-1)^h + 1
  BigInt weak;    // (p+n-1)^{h(p-1)} + 1
};

/// Blokhuis-Moorhouse bound on partial ovoids in V(n, p^h).
BmBound bm_bound(unsigned p, unsigned h, int n);

struct BoundReport {
  std::string formula;
  unsigned p = 0;
  unsigned h = 0;
  unsigned q = 0;
  int r = 0;
  int k = 0;
  int e2 = 0;
  Rational product;  // prod_{i=1}^{k-1} (...)
  BigInt power;      // (p+2r-2k+3)^{kh(p-1)}
  Rational bound;    // product * power
  BigInt bound_floor;
  BigInt cap;        // 2^{k-1} * power
  bool within_cap = false;
};

/// Bound on partial (r,k)-ovoids; requires r >= k+1 and k >= 1.
BoundReport partial_rk_ovoid_bound(unsigned p, unsigned h, int r, int k, int e2);

struct ThresholdReport {
  unsigned p = 0;
  int k = 0;
  int e2 = 0;
  int window = 0;
  /// Empty when no threshold was found below the scan cap.
  std::optional<int> r_star;
  /// ovoid_size / bound for r = r*, ..., r*+window.
  std::vector<Rational> ratios;
  bool ratios_increasing = false;
};

/// Smallest r* >= k+1 with ovoid_size(r,k,e,p) > bound(p,1,r,k,e) for
/// every r in [r*, r*+window], evaluated at h = 1 (or h = 2 when e is a
/// half-integer).
ThresholdReport nonexistence_rank_threshold(unsigned p, int k, int e2,
                                            int window = 50, int max_rank = 2000);

struct SchrijverBound {
  Rational value;  // ((deg-1)^{deg-1} / deg^{deg-2})^v
  BigInt floor;
};

SchrijverBound schrijver_bound(int v, int deg);

/// Decimal text of a rational: "a/b", or "a" when integral.
std::string to_text(const Rational& x);
/// Decimal approximation with `digits` fractional digits.
std::string to_decimal(const Rational& x, int digits = 6);

}  // namespace polarcover

#endif  // POLARCOVER_COUNTING_HPP_
