/* Copyright (C) 2026 The valchain authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <random>

#include <gmpxx.h>

#include "valchain/field.hpp"
#include "valchain/poly.hpp"

namespace valchain {

// Seeded random sampling of field elements and polynomials, shared by the
// falsifiers and the property tests.
using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// u * p^k with |u| < p^2 and 0 <= k <= height; zero with small probability.
inline mpq_class random_element(const PAdicRationals& f, Rng& rng, int height,
                                bool allow_negative_valuation = false) {
  long p = f.prime();
  if (uniform_int(rng, 0, 9) == 0) return 0;
  long u = uniform_int(rng, 1, p * p - 1);
  if (uniform_int(rng, 0, 1)) u = -u;
  long k = uniform_int(rng, allow_negative_valuation ? -height : 0, height);
  return mpq_class(u) * f.element_of_valuation(Value(k));
}

// Polynomial in t of degree <= 2 times t^k, 0 <= k <= height.
inline RatFunc random_element(const LaurentRationalFunctions& f, Rng& rng, int height,
                              bool allow_negative_valuation = false) {
  long p = f.prime();
  if (uniform_int(rng, 0, 9) == 0) return f.zero();
  std::vector<long> c;
  for (int i = 0; i < 3; ++i) c.push_back(uniform_int(rng, 0, p - 1));
  if (c[0] == 0) c[0] = 1;
  RatFunc u(FpPoly(p, c), FpPoly::constant(p, 1));
  long k = uniform_int(rng, allow_negative_valuation ? -height : 0, height);
  return u * f.element_of_valuation(Value(k));
}

// Integer in [-h, h], the "height <= h" coefficients used by the Kahler
// falsifier; over F_p(t) a polynomial in t of degree <= 2.
inline mpq_class random_bounded(const PAdicRationals&, Rng& rng, long h) {
  return mpq_class(uniform_int(rng, -h, h));
}
inline RatFunc random_bounded(const LaurentRationalFunctions& f, Rng& rng, long) {
  long p = f.prime();
  std::vector<long> c;
  for (int i = 0; i < 3; ++i) c.push_back(uniform_int(rng, 0, p - 1));
  return RatFunc(FpPoly(p, c), FpPoly::constant(p, 1));
}

template <class F>
Poly<F> random_poly(const F& f, Rng& rng, int degree, int height, bool monic = false) {
  std::vector<typename F::Elem> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_element(f, rng, height));
  if (monic) c.back() = f.one();
  return Poly<F>(f, std::move(c));
}

} // namespace valchain
