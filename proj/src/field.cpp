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
#include "valchain/field.hpp"

#include <stdexcept>

#include "valchain/errors.hpp"
#include "valchain/poly.hpp"

namespace valchain {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

long padic_ord(const mpz_class& n, long p) {
  if (n == 0) throw std::invalid_argument("padic_ord of zero");
  mpz_class m = abs(n);
  long k = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    m /= p;
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------
// FpPoly

FpPoly::FpPoly(long p, std::vector<long> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& x : c_) x = mod(x, p_);
  trim();
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long FpPoly::inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = mod(a, p);
  if (nr == 0) throw std::domain_error("zero has no inverse mod p");
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return mod(t, p);
}

int FpPoly::ord() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

FpPoly FpPoly::operator-() const {
  FpPoly r(p_);
  for (long x : c_) r.c_.push_back(mod(-x, p_));
  return r;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  FpPoly r(a.p_);
  std::size_t n = std::max(a.c_.size(), b.c_.size());
  r.c_.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.c_[i] = FpPoly::mod(a.coeff(i) + b.coeff(i), a.p_);
  r.trim();
  return r;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  FpPoly r(a.p_);
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      r.c_[i + j] = FpPoly::mod(r.c_[i + j] + FpPoly::mulmod(a.c_[i], b.c_[j], a.p_), a.p_);
  r.trim();
  return r;
}

FpPoly FpPoly::scaled(long k) const {
  FpPoly r(p_);
  for (long x : c_) r.c_.push_back(mulmod(x, mod(k, p_), p_));
  r.trim();
  return r;
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv(lead(), p_));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& g) const {
  if (g.is_zero()) throw DivisionByZeroPoly("division by the zero polynomial in F_p[t]");
  FpPoly q(p_), r = *this;
  long li = inv(g.lead(), p_);
  if (degree() >= g.degree()) q.c_.assign(static_cast<std::size_t>(degree() - g.degree() + 1), 0);
  while (!r.is_zero() && r.degree() >= g.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree() - g.degree());
    long c = mulmod(r.lead(), li, p_);
    q.c_[shift] = c;
    for (std::size_t i = 0; i < g.c_.size(); ++i)
      r.c_[i + shift] = mod(r.c_[i + shift] - mulmod(c, g.c_[i], p_), p_);
    r.trim();
  }
  q.trim();
  return {q, r};
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string FpPoly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    long c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i > 0 && c != 1) s += "*";
    if (i > 0) s += "t";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(FpPoly num, FpPoly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  long p = num.prime();
  if (num.is_zero()) {
    num_ = FpPoly(p);
    den_ = FpPoly::constant(p, 1);
    return;
  }
  FpPoly g = FpPoly::gcd(num, den);
  num = num.divmod(g).first;
  den = den.divmod(g).first;
  long li = FpPoly::inv(den.lead(), p);
  num_ = num.scaled(li);
  den_ = den.scaled(li);
}

RatFunc RatFunc::from_int(long p, const mpz_class& n) {
  mpz_class r = n % p;
  if (r < 0) r += p;
  return RatFunc(FpPoly::constant(p, r.get_si()), FpPoly::constant(p, 1));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("division by zero in F_p(t)");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str() const {
  if (den_.degree() == 0) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// Fields

namespace {

void require_prime(long p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

long integral_exponent(const Value& r) {
  if (!r.is_fin() || r.rational().get_den() != 1)
    throw NotInValueGroup(r.str() + " is not in the value group Z");
  if (!r.rational().get_num().fits_slong_p())
    throw NotInValueGroup(r.str() + " is too large");
  return r.rational().get_num().get_si();
}

} // namespace

PAdicRationals::PAdicRationals(long p) : p_(p) { require_prime(p); }

PAdicRationals::Elem PAdicRationals::t() const {
  throw ParseError("'t' is not available over the p-adic rationals");
}

Value PAdicRationals::vk(const Elem& x) const {
  if (x == 0) return Value::inf();
  return Value(padic_ord(x.get_num(), p_) - padic_ord(x.get_den(), p_));
}

PAdicRationals::Elem PAdicRationals::element_of_valuation(const Value& r) const {
  long k = integral_exponent(r);
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p_),
                static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Elem(pk) : Elem(mpz_class(1), pk);
}

PAdicRationals::Elem PAdicRationals::parse(const std::string& text) const {
  return parse_element(*this, text);
}

LaurentRationalFunctions::LaurentRationalFunctions(long p) : p_(p) { require_prime(p); }

LaurentRationalFunctions::Elem
LaurentRationalFunctions::from_rational(const mpq_class& q) const {
  if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), static_cast<unsigned long>(p_)))
    throw std::domain_error(q.get_str() + " has no image in F_" + std::to_string(p_));
  return from_int(q.get_num()) / from_int(q.get_den());
}

Value LaurentRationalFunctions::vk(const Elem& x) const {
  if (x.is_zero()) return Value::inf();
  return Value(static_cast<long>(x.num().ord() - x.den().ord()));
}

LaurentRationalFunctions::Elem
LaurentRationalFunctions::element_of_valuation(const Value& r) const {
  long k = integral_exponent(r);
  std::vector<long> c(static_cast<std::size_t>(k < 0 ? -k : k) + 1, 0);
  c.back() = 1;
  FpPoly tk(p_, c);
  FpPoly one = FpPoly::constant(p_, 1);
  return k >= 0 ? RatFunc(tk, one) : RatFunc(one, tk);
}

LaurentRationalFunctions::Elem
LaurentRationalFunctions::parse(const std::string& text) const {
  return parse_element(*this, text);
}

} // namespace valchain
