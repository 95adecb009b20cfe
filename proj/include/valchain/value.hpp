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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace valchain {

// An element of the value codomain: a rational, a quadratic irrational
// a + b*sqrt(d) with d squarefree and b != 0, or +infinity.
class Value {
public:
  enum class Kind { Fin, Quad, Inf };

  Value() = default;
  Value(long n) : a_(n) {}
  Value(const mpq_class& q) : a_(q) { a_.canonicalize(); }

  static Value fin(const mpq_class& q) { return Value(q); }
  static Value quad(const mpq_class& a, const mpq_class& b, long d);
  static Value sqrt(long d) { return quad(0, 1, d); }
  static Value inf();

  Kind kind() const { return kind_; }
  bool is_inf() const { return kind_ == Kind::Inf; }
  bool is_fin() const { return kind_ == Kind::Fin; }
  bool is_quad() const { return kind_ == Kind::Quad; }
  bool is_finite() const { return kind_ != Kind::Inf; }

  const mpq_class& rational() const { return a_; }
  const mpq_class& radical_coeff() const { return b_; }
  long radicand() const { return d_; }

  int sign() const;
  Value operator-() const;
  Value& operator+=(const Value& o) { return *this = *this + o; }
  Value& operator-=(const Value& o) { return *this = *this - o; }

  friend Value operator+(const Value& x, const Value& y);
  friend Value operator-(const Value& x, const Value& y);
  friend Value operator*(const Value& x, const Value& y);
  friend Value operator/(const Value& x, const Value& y);

  // Exact comparison. Throws MixedIrrationals for two Quads with distinct d.
  friend std::strong_ordering operator<=>(const Value& x, const Value& y);
  friend bool operator==(const Value& x, const Value& y);

  // Largest integer <= value (finite values only).
  mpz_class floor() const;
  Value inverse() const;

  std::string str() const;
  static Value parse(std::string_view text);
  // Decimal rendering truncated toward -inf to `digits` fractional digits.
  std::string approx(int digits) const;

private:
  Kind kind_ = Kind::Fin;
  mpq_class a_{0};
  mpq_class b_{0};
  long d_ = 0;
};

Value value_min(const std::vector<Value>& xs);
Value value_max(const std::vector<Value>& xs);

// Exact comparison that also handles two different radicals.
std::strong_ordering compare_mixed(const Value& x, const Value& y);

// Subgroup of the reals generated by Values; either gamma*Z with rational
// gamma > 0, or a dense group stored by generators.
class ValueGroup {
public:
  static ValueGroup discrete(const mpq_class& gamma);
  static ValueGroup integers() { return discrete(1); }
  // Generators are reduced; an all-rational list collapses to gamma*Z.
  static ValueGroup dense(const std::vector<Value>& generators);

  bool is_discrete() const { return discrete_; }
  const mpq_class& gamma() const { return gamma_; }
  const std::vector<Value>& generators() const { return gens_; }

  ValueGroup join(const Value& mu) const;
  Value inf_positive() const;

  bool in_rational_span(const Value& x) const;
  bool contains(const Value& x) const;
  // Minimal m > 0 with m*x in the group, or nullopt if x is not in the
  // rational span.
  std::optional<mpz_class> min_multiple_in(const Value& x) const;
  // A Z-basis, available when at most one radical occurs.
  std::vector<Value> basis() const;

  // Equality as subgroups.
  friend bool operator==(const ValueGroup& g, const ValueGroup& h);

  std::string str() const;

private:
  bool discrete_ = true;
  mpq_class gamma_{1};
  std::vector<Value> gens_;
};

} // namespace valchain
