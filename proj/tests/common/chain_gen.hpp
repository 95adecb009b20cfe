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

#include <vector>

#include "valchain/chain.hpp"
#include "valchain/random.hpp"

namespace testutil {

using namespace valchain;

// Random valid MacLane-Vaquie chains with finite radii and keys that are
// key polynomials by construction:
//  - a linear key T - b with v(b - a) >= r on a Gauss valuation [T - a, r];
//  - (T - b)^e - u*pi^s on [T - b, s/e] with gcd(s, e) = 1;
//  - phi + u*pi^k on [phi, k], a degree-stationary refinement.
// u is a unit and pi the uniformizer. At most three records, key degree <= 4.
template <class F>
Chain<F> random_chain(const F& f, Rng& rng, int max_records = 3) {
  using P = Poly<F>;
  auto pi_pow = [&](long k) { return f.element_of_valuation(Value(k)); };
  auto unit = [&]() -> typename F::Elem { return f.from_int(mpz_class(uniform_int(rng, 1, f.prime() - 1))); };
  auto bump = [&] {
    static const std::vector<mpq_class> steps = {mpq_class(1, 4), mpq_class(1, 3), mpq_class(1, 2),
                                                 mpq_class(2, 3), mpq_class(1), mpq_class(3, 2),
                                                 mpq_class(2)};
    return Value(steps[static_cast<std::size_t>(uniform_int(rng, 0, 6))]);
  };
  long r = uniform_int(rng, 0, 1);
  typename F::Elem a = f.from_int(mpz_class(uniform_int(rng, 0, f.prime() - 1)));
  Chain<F> c{GaussVal<F>{f, a, Value(r)}, {}};
  int n = static_cast<int>(uniform_int(rng, 0, max_records));
  if (n == 0) return c;

  typename F::Elem b = a + unit() * pi_pow(r + uniform_int(rng, 0, 1));
  Value mu = Value(r) + bump();
  P key = P::linear(f, b);
  c.augs.push_back(AugRecord<F>::ordinary(key, mu));
  bool linear = true;
  for (int i = 1; i < n; ++i) {
    const mpq_class& q = mu.rational();
    long e = q.get_den().get_si();
    if (linear && e == 1) {
      b = b + unit() * pi_pow(q.get_num().get_si());
      key = P::linear(f, b);
      mu = mu + bump();
    } else if (linear && e * key.degree() <= 4) {
      long s = q.get_num().get_si();
      key = P::linear(f, b).pow(static_cast<unsigned>(e)) - P::constant(f, unit() * pi_pow(s));
      mu = Value(s) + bump();
      linear = false;
    } else if (e == 1) {
      key = key + P::constant(f, unit() * pi_pow(q.get_num().get_si()));
      mu = mu + bump();
    } else {
      break;
    }
    c.augs.push_back(AugRecord<F>::ordinary(key, mu));
  }
  return c;
}

} // namespace testutil
