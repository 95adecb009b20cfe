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
#include <random>

#include <gmpxx.h>

#include "support.hpp"
#include "valchain/errors.hpp"
#include "valchain/value.hpp"

using namespace valchain;

namespace {

// Independent high-precision real oracle for ordering.
mpf_class as_real(const Value& x) {
  mpf_class r(x.rational(), 512);
  if (x.is_quad()) {
    mpf_class s(x.radicand(), 512);
    s = sqrt(s);
    r += mpf_class(x.radical_coeff(), 512) * s;
  }
  return r;
}

Value random_value(std::mt19937_64& rng, long d) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12), pick(0, 2);
  mpq_class a(num(rng), den(rng)), b(num(rng), den(rng));
  a.canonicalize();
  b.canonicalize();
  if (pick(rng) == 0 || b == 0) return Value(a);
  return Value::quad(a, b, d);
}

} // namespace

TEST_CASE("value text round-trips") {
  for (const char* s : {"3/2", "inf", "1/2+1/3*sqrt(2)", "-2*sqrt(5)", "0", "-7/4", "sqrt(3)"}) {
    Value v = Value::parse(s);
    CHECK(Value::parse(v.str()) == v);
  }
  CHECK(Value::parse("3/2") == Value(mpq_class(3, 2)));
  CHECK(Value::parse("-2*sqrt(5)") == Value::quad(0, -2, 5));
  CHECK(Value::parse("sqrt(2)*3") == Value::quad(0, 3, 2));
  CHECK(Value::parse("sqrt(8)") == Value::quad(0, 2, 2));
  CHECK(Value::parse("1+0*sqrt(2)").is_fin());
  CHECK_THROWS_AS(Value::parse("3/"), ParseError);
  CHECK_THROWS_AS(Value::parse("sqrt(4)+"), ParseError);
  CHECK_THROWS_AS(Value::parse("sqrt(2)*sqrt(2)"), ParseError);
}

TEST_CASE("value_min examples") {
  CHECK(value_min({Value(mpq_class(3, 2)), Value::inf(), Value(1)}) == Value(1));
  CHECK(value_min({Value(1), Value::sqrt(2)}) == Value(1));
  CHECK(value_min({Value(mpq_class(5, 7))}) == Value(mpq_class(5, 7)));
  CHECK_THROWS_AS(value_min({Value::sqrt(2), Value::sqrt(3)}), MixedIrrationals);
}

TEST_CASE("quadratic arithmetic") {
  Value r2 = Value::sqrt(2);
  CHECK((r2 - r2) == Value(0));
  CHECK((r2 - r2).is_fin());
  CHECK((r2 + 1 - 1) == r2);
  CHECK((Value(3) * r2) == Value::quad(0, 3, 2));
  CHECK_THROWS_AS(r2 + Value::sqrt(3), MixedIrrationals);
  CHECK_THROWS_AS((void)(r2 < Value::sqrt(3)), MixedIrrationals);
  CHECK((Value::inf() + r2).is_inf());
  CHECK(Value(1) < r2);
  CHECK(r2 < Value(mpq_class(3, 2)));
  CHECK(-r2 < Value(-1));
  CHECK(r2 < Value::inf());
}

TEST_CASE("floor of quadratic values matches a real oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Value x = random_value(rng, 7);
    mpf_class r = as_real(x);
    mpf_class fl = floor(r);
    CHECK(x.floor() == mpz_class(fl));
  }
  CHECK(Value::sqrt(2).floor() == 1);
  CHECK((-Value::sqrt(2)).floor() == -2);
}

TEST_CASE("mixed radical comparison") {
  CHECK(compare_mixed(Value::sqrt(2), Value::sqrt(3)) < 0);
  CHECK(compare_mixed(Value::quad(1, 1, 2), Value::sqrt(5)) > 0);
  CHECK(compare_mixed(Value::quad(0, 3, 2), Value::quad(0, 2, 5)) < 0);
  CHECK(compare_mixed(Value::sqrt(3), Value::inf()) < 0);
}

TEST_CASE("order is total and agrees with signs of differences") {
  std::mt19937_64 rng(7);
  for (long d : {2L, 3L, 5L, 6L}) {
    for (int i = 0; i < 250; ++i) {
      Value a = random_value(rng, d), b = random_value(rng, d), c = random_value(rng, d);
      int lt = a < b, eq = a == b, gt = a > b;
      CHECK(lt + eq + gt == 1);
      if (a <= b && b <= c) CHECK(a <= c);
      mpf_class diff = as_real(a) - as_real(b);
      CHECK((a < b) == (diff < 0));
      Value s = a + b;
      CHECK((s < c) == ((s - c).sign() < 0));
      CHECK(((s - c).sign() < 0) == (as_real(s) - as_real(c) < 0));
    }
  }
}

TEST_CASE("value groups") {
  ValueGroup z = ValueGroup::integers();
  CHECK(z.join(Value(mpq_class(1, 2))) == ValueGroup::discrete(mpq_class(1, 2)));
  CHECK_FALSE(z.join(Value::sqrt(2)).is_discrete());
  CHECK(ValueGroup::discrete(mpq_class(1, 2)).join(Value(3)) ==
        ValueGroup::discrete(mpq_class(1, 2)));
  CHECK(z.join(Value::inf()) == z);
  CHECK(z.inf_positive() == Value(1));
  CHECK(ValueGroup::discrete(mpq_class(1, 2)).inf_positive() == Value(mpq_class(1, 2)));
  CHECK(ValueGroup::dense({Value(1), Value::sqrt(2)}).inf_positive() == Value(0));
  CHECK(z.join(Value(mpq_class(2, 3))).join(Value(mpq_class(1, 4))) ==
        ValueGroup::discrete(mpq_class(1, 12)));

  ValueGroup d = ValueGroup::dense({Value(1), Value::sqrt(2)});
  CHECK(d.contains(Value::quad(3, -2, 2)));
  CHECK_FALSE(d.contains(Value::quad(mpq_class(1, 2), 1, 2)));
  CHECK(d.min_multiple_in(Value::quad(mpq_class(1, 2), 1, 2)) == mpz_class(2));
  CHECK_FALSE(d.min_multiple_in(Value::sqrt(3)).has_value());
  CHECK(z.min_multiple_in(Value(mpq_class(3, 4))) == mpz_class(4));
}

TEST_CASE("join is idempotent and commutative") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    ValueGroup g = ValueGroup::integers();
    Value x = random_value(rng, 2), y = random_value(rng, 2);
    ValueGroup gx = g.join(x);
    CHECK(gx.join(x) == gx);
    CHECK(gx.join(y) == g.join(y).join(x));
  }
}
