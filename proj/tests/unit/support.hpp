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

#include <string>
#include <vector>

#include "doctest.h"
#include "valchain/chain.hpp"
#include "valchain/field.hpp"
#include "valchain/value.hpp"

namespace doctest {
template <>
struct StringMaker<valchain::Value> {
  static String convert(const valchain::Value& v) { return v.str().c_str(); }
};
template <>
struct StringMaker<valchain::ValueGroup> {
  static String convert(const valchain::ValueGroup& g) { return g.str().c_str(); }
};
} // namespace doctest

namespace testutil {

using namespace valchain;

inline Value V(const char* s) { return Value::parse(s); }

template <class F>
Chain<F> chain(const F& f, const char* center, const char* radius,
               std::vector<std::pair<const char*, const char*>> ordinary = {}) {
  Chain<F> c{GaussVal<F>{f, parse_element(f, center), V(radius)}, {}};
  for (const auto& [phi, mu] : ordinary)
    c.augs.push_back(AugRecord<F>::ordinary(parse_poly(f, phi), V(mu)));
  return c;
}

template <class F>
FamilyPrefix<F> family(const F& f, std::vector<std::pair<const char*, const char*>> pairs,
                       const char* limit) {
  FamilyPrefix<F> fam;
  for (const auto& [psi, gamma] : pairs) fam.pairs.emplace_back(parse_poly(f, psi), V(gamma));
  fam.declared_gamma_limit = V(limit);
  return fam;
}

// 5-adic truncations b_k of sqrt(6) = 1 + 3*5 + ... with v(sqrt(6) - b_k)
// exactly gamma_k.
inline FamilyPrefix<PAdicRationals> sqrt6_family(const PAdicRationals& q5, std::size_t n = 5) {
  std::vector<std::pair<const char*, const char*>> all = {
      {"T-1", "1"}, {"T-16", "3"}, {"T-516", "4"}, {"T-1766", "5"}, {"T-4891", "6"}};
  all.resize(n);
  return family(q5, all, "inf");
}

} // namespace testutil
