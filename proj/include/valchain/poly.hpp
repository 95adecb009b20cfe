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

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "valchain/errors.hpp"

namespace valchain {

// Dense polynomial in T over the field F, coefficients low to high with no
// trailing zeros. The zero polynomial has degree -1.
template <class F>
class Poly {
public:
  using Elem = typename F::Elem;

  explicit Poly(const F& field) : field_(field) {}
  Poly(const F& field, std::vector<Elem> coeffs) : field_(field), c_(std::move(coeffs)) {
    trim();
  }
  static Poly constant(const F& field, const Elem& c) { return Poly(field, {c}); }
  static Poly monomial(const F& field, const Elem& c, std::size_t n) {
    std::vector<Elem> v(n + 1, field.zero());
    v[n] = c;
    return Poly(field, std::move(v));
  }
  static Poly T(const F& field) { return monomial(field, field.one(), 1); }
  // T - a
  static Poly linear(const F& field, const Elem& a) { return Poly(field, {-a, field.one()}); }

  const F& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  Elem lead() const { return c_.empty() ? field_.zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == field_.one(); }

  Poly operator-() const {
    Poly r(field_);
    for (const auto& x : c_) r.c_.push_back(-x);
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r(a.field_);
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i) r.c_.push_back(a.coeff(i) + b.coeff(i));
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.field_.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly scaled(const Elem& k) const {
    Poly r(field_);
    for (const auto& x : c_) r.c_.push_back(k * x);
    r.trim();
    return r;
  }

  Poly pow(unsigned n) const {
    Poly r = constant(field_, field_.one()), b = *this;
    while (n) {
      if (n & 1u) r = r * b;
      n >>= 1u;
      if (n) b = b * b;
    }
    return r;
  }

  Elem evaluate(const Elem& x) const {
    Elem acc = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    Poly r(field_);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_.push_back(field_.from_int(mpz_class(static_cast<unsigned long>(i))) * c_[i]);
    r.trim();
    return r;
  }

  // Euclidean division: *this = q*g + r with deg r < deg g.
  std::pair<Poly, Poly> divmod(const Poly& g) const {
    if (g.is_zero()) throw DivisionByZeroPoly("division by the zero polynomial");
    Poly q(field_), r = *this;
    if (r.degree() < g.degree()) return {q, r};
    q.c_.assign(static_cast<std::size_t>(r.degree() - g.degree() + 1), field_.zero());
    Elem li = field_.one() / g.lead();
    while (!r.is_zero() && r.degree() >= g.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - g.degree());
      Elem c = r.lead() * li;
      q.c_[shift] = c;
      for (std::size_t i = 0; i < g.c_.size(); ++i) r.c_[i + shift] = r.c_[i + shift] - c * g.c_[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  // Coefficients a_i with *this = sum a_i phi^i and deg a_i < deg phi.
  std::vector<Poly> phi_expansion(const Poly& phi) const {
    if (phi.degree() < 1) throw ConstantPhi("phi-expansion needs a non-constant phi");
    std::vector<Poly> out;
    Poly rest = *this;
    while (!rest.is_zero()) {
      auto [q, r] = rest.divmod(phi);
      out.push_back(std::move(r));
      rest = std::move(q);
    }
    if (out.empty()) out.push_back(Poly(field_));
    return out;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Elem& c = c_[static_cast<std::size_t>(i)];
      if (field_.is_zero(c)) continue;
      std::string cs = field_.str(c);
      bool neg = !cs.empty() && cs[0] == '-';
      std::string mag = neg ? cs.substr(1) : cs;
      bool compound = mag.find_first_of("+-()") != std::string::npos ||
                      (field_.has_t() && mag.find('/') != std::string::npos);
      if (compound) {
        mag = "(" + (neg ? cs : mag) + ")";
        neg = false;
      }
      if (!s.empty() || neg) s += neg ? "-" : "+";
      if (i == 0) {
        s += mag;
        continue;
      }
      if (mag != "1") s += mag + "*";
      s += "T";
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

private:
  void trim() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
  }

  F field_;
  std::vector<Elem> c_;
};

namespace detail {

// Recursive-descent parser shared by element texts and polynomial texts.
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' integer]
//   atom   := number | 't' | 'T' | '(' expr ')'
// Division is allowed only by nonzero constants; juxtaposition is rejected.
template <class F>
class PolyParser {
public:
  PolyParser(const F& field, std::string_view text, bool allow_T)
      : f_(field), s_(text), allow_T_(allow_T) {}

  Poly<F> parse() {
    Poly<F> p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("polynomial '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_atom_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'T' || c == '(';
  }

  Poly<F> expr() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Poly<F> acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Poly<F> term() {
    Poly<F> acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        Poly<F> d = factor();
        if (d.is_zero()) fail("division by zero");
        if (d.degree() > 0) fail("division by a non-constant polynomial");
        acc = acc.scaled(f_.one() / d.lead());
      } else {
        if (at_atom_start()) fail("implicit multiplication is not allowed");
        return acc;
      }
    }
  }

  Poly<F> factor() {
    Poly<F> base = atom();
    if (accept('^')) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '-') fail("negative exponents are not allowed");
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      if (pos_ - start > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Poly<F> atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly<F> inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'T') {
      ++pos_;
      if (!allow_T_) fail("'T' is not allowed in a field element");
      return Poly<F>::T(f_);
    }
    if (c == 't') {
      ++pos_;
      if (!f_.has_t()) fail("'t' is not available over this base field");
      return Poly<F>::constant(f_, f_.t());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class n(std::string(s_.substr(start, pos_ - start)));
      return Poly<F>::constant(f_, f_.from_int(n));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const F& f_;
  std::string_view s_;
  bool allow_T_;
  std::size_t pos_ = 0;
};

} // namespace detail

template <class F>
Poly<F> parse_poly(const F& field, std::string_view text) {
  return detail::PolyParser<F>(field, text, true).parse();
}

template <class F>
typename F::Elem parse_element(const F& field, std::string_view text) {
  Poly<F> p = detail::PolyParser<F>(field, text, false).parse();
  return p.coeff(0);
}

} // namespace valchain
