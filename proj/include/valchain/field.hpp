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
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "valchain/value.hpp"

namespace valchain {

// Polynomial in t over F_p, coefficients stored as least nonnegative residues.
class FpPoly {
public:
  FpPoly() = default;
  explicit FpPoly(long p) : p_(p) {}
  FpPoly(long p, std::vector<long> coeffs);
  static FpPoly constant(long p, long c) { return FpPoly(p, {c}); }
  static FpPoly t(long p) { return FpPoly(p, {0, 1}); }

  long prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  long coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  long lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<long>& coeffs() const { return c_; }
  // Order of vanishing at t = 0; -1 for the zero polynomial.
  int ord() const;

  FpPoly operator-() const;
  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  FpPoly scaled(long k) const;
  FpPoly monic() const;
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& g) const;
  static FpPoly gcd(FpPoly a, FpPoly b);

  std::string str() const;

  static long mod(long x, long p) {
    long r = x % p;
    return r < 0 ? r + p : r;
  }
  static long mulmod(long a, long b, long p) {
    return static_cast<long>((static_cast<__int128>(a) * b) % p);
  }
  static long inv(long a, long p);

private:
  void trim();
  long p_ = 2;
  std::vector<long> c_;
};

// Element of F_p(t): reduced fraction with monic denominator.
class RatFunc {
public:
  RatFunc() : num_(2), den_(FpPoly::constant(2, 1)) {}
  explicit RatFunc(long p) : num_(p), den_(FpPoly::constant(p, 1)) {}
  RatFunc(FpPoly num, FpPoly den);
  static RatFunc from_int(long p, const mpz_class& n);
  static RatFunc t(long p) { return RatFunc(FpPoly::t(p), FpPoly::constant(p, 1)); }

  long prime() const { return num_.prime(); }
  const FpPoly& num() const { return num_; }
  const FpPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const;

private:
  FpPoly num_, den_;
};

// The rationals with the p-adic valuation, v(p) = 1.
class PAdicRationals {
public:
  using Elem = mpq_class;
  explicit PAdicRationals(long p);

  long prime() const { return p_; }
  long characteristic() const { return 0; }
  const char* kind() const { return "padic"; }
  bool has_t() const { return false; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(const mpz_class& n) const { return Elem(n); }
  Elem from_rational(const mpq_class& q) const { return q; }
  Elem t() const;
  bool is_zero(const Elem& x) const { return x == 0; }

  Value vk(const Elem& x) const;
  Elem element_of_valuation(const Value& r) const;
  std::string str(const Elem& x) const { return x.get_str(); }
  Elem parse(const std::string& text) const;
  ValueGroup value_group() const { return ValueGroup::integers(); }

  friend bool operator==(const PAdicRationals& a, const PAdicRationals& b) {
    return a.p_ == b.p_;
  }

private:
  long p_;
};

// F_p(t) with the t-adic valuation, v(t) = 1.
class LaurentRationalFunctions {
public:
  using Elem = RatFunc;
  explicit LaurentRationalFunctions(long p);

  long prime() const { return p_; }
  long characteristic() const { return p_; }
  const char* kind() const { return "laurent"; }
  bool has_t() const { return true; }

  Elem zero() const { return RatFunc(p_); }
  Elem one() const { return RatFunc::from_int(p_, 1); }
  Elem from_int(const mpz_class& n) const { return RatFunc::from_int(p_, n); }
  Elem from_rational(const mpq_class& q) const;
  Elem t() const { return RatFunc::t(p_); }
  bool is_zero(const Elem& x) const { return x.is_zero(); }

  Value vk(const Elem& x) const;
  Elem element_of_valuation(const Value& r) const;
  std::string str(const Elem& x) const { return x.str(); }
  Elem parse(const std::string& text) const;
  ValueGroup value_group() const { return ValueGroup::integers(); }

  friend bool operator==(const LaurentRationalFunctions& a,
                         const LaurentRationalFunctions& b) {
    return a.p_ == b.p_;
  }

private:
  long p_;
};

bool is_prime(long p);

// p-adic valuation of a nonzero integer.
long padic_ord(const mpz_class& n, long p);

} // namespace valchain
