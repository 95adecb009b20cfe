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
#include "valchain/value.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "valchain/errors.hpp"

namespace valchain {

namespace {

int sign_of(const mpq_class& q) {
  int s = sgn(q);
  return (s > 0) - (s < 0);
}

std::strong_ordering ord_from_sign(int s) {
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Writes n = k^2 * r with r squarefree.
void split_square(long n, long& k, long& r) {
  k = 1;
  r = n;
  for (long f = 2; f * f <= r; ++f) {
    while (r % (f * f) == 0) {
      r /= f * f;
      k *= f;
    }
  }
}

mpz_class floor_div(const mpz_class& n, const mpz_class& d) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

mpz_class floor_q(const mpq_class& q) {
  return floor_div(q.get_num(), q.get_den());
}

void require_same_radical(const Value& x, const Value& y) {
  if (x.is_quad() && y.is_quad() && x.radicand() != y.radicand())
    throw MixedIrrationals("values with radicands " +
                           std::to_string(x.radicand()) + " and " +
                           std::to_string(y.radicand()) + " cannot be mixed");
}

} // namespace

Value Value::quad(const mpq_class& a, const mpq_class& b, long d) {
  if (d <= 0) throw std::invalid_argument("radicand must be positive");
  long k = 1, r = d;
  split_square(d, k, r);
  mpq_class bb = b * k;
  Value v(a);
  if (bb == 0) return v;
  if (r == 1) return Value(mpq_class(a + bb));
  v.kind_ = Kind::Quad;
  v.b_ = bb;
  v.b_.canonicalize();
  v.d_ = r;
  return v;
}

Value Value::inf() {
  Value v;
  v.kind_ = Kind::Inf;
  return v;
}

int Value::sign() const {
  switch (kind_) {
  case Kind::Inf:
    return 1;
  case Kind::Fin:
    return sign_of(a_);
  case Kind::Quad: {
    int sa = sign_of(a_), sb = sign_of(b_);
    if (sa >= 0 && sb >= 0) return 1;
    if (sa <= 0 && sb <= 0) return -1;
    // Opposite signs: compare a^2 with b^2 d.
    mpq_class diff = a_ * a_ - b_ * b_ * d_;
    int s = sign_of(diff);
    return sa > 0 ? s : -s;
  }
  }
  return 0;
}

Value Value::operator-() const {
  if (is_inf()) throw std::domain_error("negative infinity is not a value");
  Value v = *this;
  v.a_ = -a_;
  v.b_ = -b_;
  return v;
}

Value operator+(const Value& x, const Value& y) {
  if (x.is_inf() || y.is_inf()) return Value::inf();
  require_same_radical(x, y);
  long d = x.is_quad() ? x.d_ : y.d_;
  if (!x.is_quad() && !y.is_quad()) return Value(mpq_class(x.a_ + y.a_));
  return Value::quad(x.a_ + y.a_, x.b_ + y.b_, d);
}

Value operator-(const Value& x, const Value& y) {
  if (y.is_inf()) throw std::domain_error("cannot subtract infinity");
  if (x.is_inf()) return Value::inf();
  return x + (-y);
}

Value operator*(const Value& x, const Value& y) {
  if (x.is_inf() || y.is_inf()) {
    const Value& other = x.is_inf() ? y : x;
    if (other.sign() > 0) return Value::inf();
    throw std::domain_error("infinity times a non-positive value");
  }
  require_same_radical(x, y);
  if (!x.is_quad() && !y.is_quad()) return Value(mpq_class(x.a_ * y.a_));
  long d = x.is_quad() ? x.d_ : y.d_;
  mpq_class a = x.a_ * y.a_ + x.b_ * y.b_ * d;
  mpq_class b = x.a_ * y.b_ + x.b_ * y.a_;
  return Value::quad(a, b, d);
}

Value Value::inverse() const {
  if (is_inf()) return Value(0);
  if (sign() == 0) throw std::domain_error("division by zero value");
  if (is_fin()) return Value(mpq_class(1 / a_));
  mpq_class norm = a_ * a_ - b_ * b_ * d_;
  return Value::quad(a_ / norm, -b_ / norm, d_);
}

Value operator/(const Value& x, const Value& y) {
  if (y.is_inf()) {
    if (x.is_inf()) throw std::domain_error("infinity over infinity");
    return Value(0);
  }
  return x * y.inverse();
}

std::strong_ordering operator<=>(const Value& x, const Value& y) {
  if (x.is_inf() || y.is_inf()) {
    if (x.is_inf() && y.is_inf()) return std::strong_ordering::equal;
    return x.is_inf() ? std::strong_ordering::greater
                      : std::strong_ordering::less;
  }
  require_same_radical(x, y);
  return ord_from_sign((x - y).sign());
}

bool operator==(const Value& x, const Value& y) {
  if (x.kind_ != y.kind_) return false;
  if (x.is_inf()) return true;
  if (x.is_fin()) return x.a_ == y.a_;
  return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

mpz_class Value::floor() const {
  if (is_inf()) throw std::domain_error("floor of infinity");
  if (is_fin()) return floor_q(a_);
  // a + b sqrt(d) = (n1 + n2 sqrt(d)) / den over a common denominator.
  mpz_class den = a_.get_den() * b_.get_den();
  mpz_class n1 = a_.get_num() * b_.get_den();
  mpz_class n2 = b_.get_num() * a_.get_den();
  mpz_class rad = n2 * n2 * d_;
  mpz_class s; // floor of |n2| sqrt(d), never exact
  mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());
  mpz_class lower = n2 > 0 ? mpz_class(n1 + s) : mpz_class(n1 - s - 1);
  return floor_div(lower, den);
}

std::string Value::str() const {
  if (is_inf()) return "inf";
  if (is_fin()) return a_.get_str();
  std::string out;
  if (a_ != 0) out = a_.get_str();
  mpq_class mag = abs(b_);
  std::string rad = "sqrt(" + std::to_string(d_) + ")";
  std::string term = mag == 1 ? rad : mag.get_str() + "*" + rad;
  if (b_ < 0)
    out += "-" + term;
  else
    out += (out.empty() ? "" : "+") + term;
  return out;
}

namespace {

class ValueLexer {
public:
  explicit ValueLexer(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("value '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }
  bool peek_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  mpq_class rational() {
    mpz_class num(digits());
    mpz_class den(1);
    if (accept("/")) {
      den = mpz_class(digits());
      if (den == 0) fail("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  long radical() {
    if (!accept("(")) fail("expected '('");
    std::string d = digits();
    if (!accept(")")) fail("expected ')'");
    if (d.size() > 15) fail("radicand too large");
    long r = std::stol(d);
    if (r == 0) fail("zero radicand");
    return r;
  }
  // term := rational ['*' sqrt(d)] | sqrt(d) ['*' rational]
  Value term() {
    if (accept("sqrt")) {
      long d = radical();
      mpq_class c(1);
      if (accept("*")) c = rational();
      return Value::quad(0, c, d);
    }
    mpq_class c = rational();
    if (accept("*")) {
      if (!accept("sqrt")) fail("expected sqrt");
      return Value::quad(0, c, radical());
    }
    return Value(c);
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

Value Value::parse(std::string_view text) {
  ValueLexer lx(text);
  if (lx.accept("inf")) {
    lx.accept("inity");
    if (!lx.done()) lx.fail("trailing input");
    return Value::inf();
  }
  if (lx.done()) lx.fail("empty value");
  Value acc(0);
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    if (lx.accept("+")) {
    } else if (lx.accept("-")) {
      sign = -1;
    } else if (!first) {
      lx.fail("expected '+' or '-'");
    }
    Value t = lx.term();
    acc = acc + (sign > 0 ? t : -t);
    first = false;
  }
  return acc;
}

std::string Value::approx(int digits) const {
  if (is_inf()) return "inf";
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Value scaled = Value(mpq_class(scale)) * *this;
  mpz_class n = scaled.floor();
  bool neg = n < 0;
  mpz_class mag = abs(n);
  mpz_class ip = mag / scale, fp = mag % scale;
  std::string out = (neg ? "-" : "") + ip.get_str();
  if (digits > 0) {
    std::string f = fp.get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

Value value_min(const std::vector<Value>& xs) {
  if (xs.empty()) throw std::invalid_argument("value_min of empty list");
  long d = 0;
  for (const auto& x : xs) {
    if (!x.is_quad()) continue;
    if (d != 0 && d != x.radicand())
      throw MixedIrrationals("value_min over distinct radicands");
    d = x.radicand();
  }
  Value best = xs.front();
  for (const auto& x : xs)
    if (x < best) best = x;
  return best;
}

Value value_max(const std::vector<Value>& xs) {
  if (xs.empty()) throw std::invalid_argument("value_max of empty list");
  Value best = xs.front();
  for (const auto& x : xs)
    if (x > best) best = x;
  return best;
}

std::strong_ordering compare_mixed(const Value& x, const Value& y) {
  if (x.is_inf() || y.is_inf() || !x.is_quad() || !y.is_quad() ||
      x.radicand() == y.radicand())
    return x <=> y;
  // sign of P + Q with P = (a - c) + b sqrt(d1), Q = -e sqrt(d2)
  Value p = Value::quad(x.rational() - y.rational(), x.radical_coeff(), x.radicand());
  Value q = Value::quad(0, -y.radical_coeff(), y.radicand());
  int sp = p.sign(), sq = q.sign();
  if (sp == 0) return ord_from_sign(sq);
  if (sp == sq) return ord_from_sign(sp);
  Value p2 = p * p;
  Value q2 = Value(mpq_class(y.radical_coeff() * y.radical_coeff() * y.radicand()));
  auto c = p2 <=> q2;
  if (c == 0) return std::strong_ordering::equal;
  return ord_from_sign(c > 0 ? sp : sq);
}

// ---------------------------------------------------------------------------
// Value groups

namespace {

// Rational coordinates of a finite value over the basis {1, sqrt(d) : d in ds}.
using Coords = std::vector<mpq_class>;

struct Lattice {
  std::vector<long> radicands; // coordinate i+1 is sqrt(radicands[i])
  mpz_class scale{1};          // rows are integer coordinates of scale * g
  std::vector<std::vector<mpz_class>> rows;

  std::size_t dim() const { return radicands.size() + 1; }

  Coords coords(const Value& v) const {
    Coords c(dim(), mpq_class(0));
    c[0] = v.rational();
    if (v.is_quad()) {
      auto it = std::find(radicands.begin(), radicands.end(), v.radicand());
      if (it == radicands.end()) return {};
      c[1 + static_cast<std::size_t>(it - radicands.begin())] = v.radical_coeff();
    }
    return c;
  }

  // Rational coefficients of v in terms of the echelon rows, or nullopt.
  std::optional<std::vector<mpq_class>> solve(const Value& v) const {
    Coords t = coords(v);
    if (t.empty()) return std::nullopt;
    for (auto& x : t) x *= scale;
    std::vector<mpq_class> c;
    std::size_t col = 0;
    for (const auto& row : rows) {
      while (col < dim() && row[col] == 0) {
        if (t[col] != 0) return std::nullopt;
        ++col;
      }
      mpq_class k = t[col] / mpq_class(row[col]);
      for (std::size_t j = col; j < dim(); ++j) t[j] -= k * row[j];
      c.push_back(k);
      ++col;
    }
    for (const auto& x : t)
      if (x != 0) return std::nullopt;
    return c;
  }
};

Lattice build_lattice(const std::vector<Value>& gens) {
  Lattice L;
  std::set<long> ds;
  for (const auto& g : gens)
    if (g.is_quad()) ds.insert(g.radicand());
  L.radicands.assign(ds.begin(), ds.end());
  std::vector<Coords> cs;
  for (const auto& g : gens) cs.push_back(L.coords(g));
  mpz_class s(1);
  for (const auto& c : cs)
    for (const auto& x : c) s = lcm(s, mpz_class(x.get_den()));
  L.scale = s;
  std::vector<std::vector<mpz_class>> m;
  for (const auto& c : cs) {
    std::vector<mpz_class> row;
    for (const auto& x : c) row.push_back(mpz_class(x * s));
    m.push_back(row);
  }
  // Integer row echelon form by repeated Euclidean reduction per column.
  std::size_t r = 0;
  for (std::size_t col = 0; col < L.dim() && r < m.size(); ++col) {
    while (true) {
      std::size_t best = m.size();
      for (std::size_t i = r; i < m.size(); ++i)
        if (m[i][col] != 0 && (best == m.size() || abs(m[i][col]) < abs(m[best][col])))
          best = i;
      if (best == m.size()) break;
      std::swap(m[r], m[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        mpz_class q = floor_div(m[i][col], m[r][col]);
        for (std::size_t j = col; j < L.dim(); ++j) m[i][j] -= q * m[r][j];
        if (m[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < m.size() && m[r][col] != 0) {
      if (m[r][col] < 0)
        for (auto& x : m[r]) x = -x;
      ++r;
    }
  }
  m.resize(r);
  L.rows = m;
  return L;
}

} // namespace

ValueGroup ValueGroup::discrete(const mpq_class& gamma) {
  if (gamma == 0) throw std::invalid_argument("discrete group generator must be nonzero");
  ValueGroup g;
  g.discrete_ = true;
  g.gamma_ = abs(gamma);
  g.gamma_.canonicalize();
  g.gens_ = {Value(g.gamma_)};
  return g;
}

ValueGroup ValueGroup::dense(const std::vector<Value>& generators) {
  std::vector<Value> gens;
  bool irrational = false;
  for (const auto& v : generators) {
    if (v.is_inf() || v.sign() == 0) continue;
    if (std::find(gens.begin(), gens.end(), v) != gens.end()) continue;
    irrational = irrational || v.is_quad();
    gens.push_back(v);
  }
  if (gens.empty()) throw std::invalid_argument("value group needs a nonzero generator");
  if (!irrational) {
    mpz_class num(0), den(1);
    for (const auto& v : gens) {
      num = gcd(num * v.rational().get_den(), den * v.rational().get_num());
      den = den * v.rational().get_den();
    }
    return discrete(mpq_class(num, den));
  }
  ValueGroup g;
  g.discrete_ = false;
  g.gamma_ = 0;
  g.gens_ = gens;
  return g;
}

ValueGroup ValueGroup::join(const Value& mu) const {
  if (mu.is_inf() || mu.sign() == 0) return *this;
  std::vector<Value> gens = gens_;
  gens.push_back(mu);
  return dense(gens);
}

Value ValueGroup::inf_positive() const {
  if (discrete_) return Value(gamma_);
  Lattice L = build_lattice(gens_);
  if (L.rows.size() >= 2) return Value(0);
  // A rank-one irrational group is discrete after all.
  Value b = basis().front();
  return b.sign() < 0 ? -b : b;
}

bool ValueGroup::in_rational_span(const Value& x) const {
  if (x.is_inf()) return false;
  return build_lattice(gens_).solve(x).has_value();
}

bool ValueGroup::contains(const Value& x) const {
  auto m = min_multiple_in(x);
  return m && *m == 1;
}

std::optional<mpz_class> ValueGroup::min_multiple_in(const Value& x) const {
  if (x.is_inf()) return std::nullopt;
  auto c = build_lattice(gens_).solve(x);
  if (!c) return std::nullopt;
  mpz_class m(1);
  for (const auto& k : *c) m = lcm(m, mpz_class(k.get_den()));
  return m;
}

std::vector<Value> ValueGroup::basis() const {
  if (discrete_) return {Value(gamma_)};
  Lattice L = build_lattice(gens_);
  if (L.radicands.size() > 1)
    throw UnsupportedIrrational("value group mixes several radicals");
  std::vector<Value> out;
  for (const auto& row : L.rows) {
    mpq_class a(row[0], L.scale);
    mpq_class b = L.radicands.empty() ? mpq_class(0) : mpq_class(row[1], L.scale);
    a.canonicalize();
    b.canonicalize();
    out.push_back(L.radicands.empty() ? Value(a) : Value::quad(a, b, L.radicands[0]));
  }
  return out;
}

bool operator==(const ValueGroup& g, const ValueGroup& h) {
  if (g.discrete_ && h.discrete_) return g.gamma_ == h.gamma_;
  for (const auto& x : g.gens_)
    if (!h.contains(x)) return false;
  for (const auto& x : h.gens_)
    if (!g.contains(x)) return false;
  return true;
}

std::string ValueGroup::str() const {
  if (discrete_) return "DiscreteZ(" + gamma_.get_str() + ")";
  std::string s = "Dense(";
  for (std::size_t i = 0; i < gens_.size(); ++i)
    s += (i ? ", " : "") + gens_[i].str();
  return s + ")";
}

} // namespace valchain
