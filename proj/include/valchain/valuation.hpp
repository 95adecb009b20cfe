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

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valchain/errors.hpp"
#include "valchain/poly.hpp"
#include "valchain/random.hpp"
#include "valchain/value.hpp"

namespace valchain {

// [v_K, T - center, radius]
template <class F>
struct GaussVal {
  F field;
  typename F::Elem center;
  Value radius;

  bool is_simple() const {
    return radius.is_fin() && field.value_group().contains(radius);
  }
  Poly<F> phi0() const { return Poly<F>::linear(field, center); }
};

// A finite prefix (psi_i, gamma_i) of a continuous family plus its declared
// limit radius.
template <class F>
struct FamilyPrefix {
  std::vector<std::pair<Poly<F>, Value>> pairs;
  Value declared_gamma_limit;

  std::size_t size() const { return pairs.size(); }
  const Poly<F>& psi(std::size_t i) const { return pairs.at(i).first; }
  const Value& gamma(std::size_t i) const { return pairs.at(i).second; }
  int degree() const { return pairs.empty() ? 0 : pairs.front().first.degree(); }
};

template <class F>
class SemiVal {
public:
  enum class Kind { Gauss, Ordinary, Limit, StableFamily };
  using P = Poly<F>;

  static SemiVal gauss(const GaussVal<F>& g) {
    auto n = std::make_shared<Node>(g.field);
    n->kind = Kind::Gauss;
    n->gauss = g;
    return SemiVal(n);
  }
  static SemiVal ordinary(const SemiVal& base, const P& phi, const Value& mu) {
    if (phi.degree() < 1) throw ConstantPhi("augmentation key must be non-constant");
    auto n = std::make_shared<Node>(base.field());
    n->kind = Kind::Ordinary;
    n->base = base.node_;
    n->phi = phi;
    n->mu = mu;
    n->gauss = base.node_->gauss;
    return SemiVal(n);
  }
  static SemiVal limit(const SemiVal& base, const FamilyPrefix<F>& fam, const P& phi,
                       const Value& mu) {
    if (phi.degree() < 1) throw ConstantPhi("limit key must be non-constant");
    auto n = std::make_shared<Node>(base.field());
    n->kind = Kind::Limit;
    n->base = base.node_;
    n->family = fam;
    n->phi = phi;
    n->mu = mu;
    n->gauss = base.node_->gauss;
    return SemiVal(n);
  }
  static SemiVal stable_family(const SemiVal& base, const FamilyPrefix<F>& fam) {
    auto n = std::make_shared<Node>(base.field());
    n->kind = Kind::StableFamily;
    n->base = base.node_;
    n->family = fam;
    n->gauss = base.node_->gauss;
    return SemiVal(n);
  }

  Kind kind() const { return node_->kind; }
  const F& field() const { return node_->field; }
  SemiVal base() const { return SemiVal(node_->base); }
  const P& phi() const { return node_->phi; }
  const Value& mu() const { return node_->mu; }
  const FamilyPrefix<F>& family() const { return node_->family; }
  // The Gauss valuation at the root of the tree.
  const GaussVal<F>& root() const { return node_->gauss; }

  // [base, psi_j, gamma_j] for a family node.
  SemiVal stage(std::size_t j) const {
    return ordinary(base(), family().psi(j), family().gamma(j));
  }

  Value eval(const P& f) const {
    if (f.is_zero()) return Value::inf();
    switch (kind()) {
    case Kind::Gauss:
      return eval_gauss(f);
    case Kind::Ordinary: {
      SemiVal b = base();
      return expansion_min(f, [&](const P& a) { return b.eval(a); });
    }
    case Kind::Limit:
      return expansion_min(f, [&](const P& a) { return family_eval(a); });
    case Kind::StableFamily:
      return family_eval(f);
    }
    return Value::inf();
  }

  // Stable value of g along the family, certified by the last two stages.
  Value family_eval(const P& g) const {
    const auto& fam = family();
    if (fam.size() < 2)
      throw FamilyPrefixTooShort("family prefix needs at least two stages");
    // Below the family degree every stage agrees with the base.
    if (g.degree() < fam.degree()) return base().eval(g);
    Value a = stage(fam.size() - 2).eval(g);
    Value b = stage(fam.size() - 1).eval(g);
    if (!(a == b))
      throw FamilyPrefixTooShort("value of " + g.str() + " has not stabilized (" + a.str() +
                                 " then " + b.str() + ")");
    return b;
  }

private:
  struct Node {
    explicit Node(const F& f) : field(f), phi(f), gauss{f, f.zero(), Value(0)} {}
    F field;
    Kind kind = Kind::Gauss;
    std::shared_ptr<const Node> base;
    P phi;
    Value mu;
    FamilyPrefix<F> family;
    GaussVal<F> gauss;
  };

  explicit SemiVal(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  template <class Fn>
  Value expansion_min(const P& f, Fn&& coeff_value) const {
    auto parts = f.phi_expansion(phi());
    Value best = Value::inf();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].is_zero()) continue;
      Value t = coeff_value(parts[i]);
      if (i > 0) t = t + scaled(mu(), i);
      if (t < best) best = t;
    }
    return best;
  }

  static Value scaled(const Value& mu, std::size_t i) {
    if (mu.is_inf()) return Value::inf();
    return Value(static_cast<long>(i)) * mu;
  }

  Value eval_gauss(const P& f) const {
    const auto& g = node_->gauss;
    auto parts = f.phi_expansion(g.phi0());
    Value best = Value::inf();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].is_zero()) continue;
      Value t = g.field.vk(parts[i].coeff(0));
      if (i > 0) t = t + scaled(g.radius, i);
      if (t < best) best = t;
    }
    return best;
  }

  std::shared_ptr<const Node> node_;
};

template <class F>
bool v_equivalent(const SemiVal<F>& v, const Poly<F>& f, const Poly<F>& g) {
  if (f.is_zero() && g.is_zero()) return true;
  return v.eval(f - g) > v.eval(f);
}

struct Verdict {
  bool accepted = true;
  std::string reason;
  std::vector<std::string> witness;
  std::vector<std::string> notes;

  static Verdict accept() { return {}; }
  static Verdict reject(std::string why, std::vector<std::string> w = {}) {
    Verdict v;
    v.accepted = false;
    v.reason = std::move(why);
    v.witness = std::move(w);
    return v;
  }
};

// Does phi v-divide F?  Tries the Euclidean cofactor, then the supplied
// candidates.
template <class F>
std::optional<Poly<F>> v_divides(const SemiVal<F>& v, const Poly<F>& phi, const Poly<F>& target,
                                 const std::vector<Poly<F>>& extra_cofactors = {}) {
  if (target.is_zero()) return Poly<F>(phi.field());
  std::vector<Poly<F>> cands{target.divmod(phi).first};
  cands.insert(cands.end(), extra_cofactors.begin(), extra_cofactors.end());
  for (const auto& c : cands) {
    if (c.is_zero()) continue;
    if (v_equivalent(v, target, phi * c)) return c;
  }
  return std::nullopt;
}

// Monte-Carlo falsifier for "phi is a key polynomial for v". Looks for
//  - a v-minimality witness: deg g < deg phi with phi*c ~_v g, where g is the
//    part of phi*c of degree < deg phi in the expansion at the root center;
//  - a v-irreducibility witness: phi |_v h1*h2 with deg h1, deg h2 < deg phi.
// Acceptance is never a proof.
template <class F>
Verdict check_key_plausible(const SemiVal<F>& v, const Poly<F>& phi, int trials,
                            int degree_bound, int height_bound, std::uint64_t seed = 0x5eed) {
  using P = Poly<F>;
  const F& f = phi.field();
  if (phi.degree() < 1) return Verdict::reject("phi is constant");
  if (!phi.is_monic()) return Verdict::reject("phi is not monic", {phi.str()});
  Rng rng(seed);
  std::size_t n = static_cast<std::size_t>(phi.degree());
  const auto& root = v.root();
  P phi0 = root.phi0();

  auto low_part = [&](const P& h) {
    auto parts = h.phi_expansion(phi0);
    P acc(f), pw = P::constant(f, f.one());
    for (std::size_t i = 0; i < parts.size() && i < n; ++i) {
      acc = acc + parts[i] * pw;
      pw = pw * phi0;
    }
    return acc;
  };

  auto try_cofactor = [&](const P& c) -> std::optional<Verdict> {
    if (c.is_zero()) return std::nullopt;
    P prod = phi * c;
    P g = low_part(prod);
    if (!g.is_zero() && g.degree() < phi.degree() && v_equivalent(v, prod, g))
      return Verdict::reject("phi is not v-minimal", {"c=" + c.str(), "g=" + g.str()});
    return std::nullopt;
  };

  if (auto r = try_cofactor(P::constant(f, f.one()))) return *r;
  for (int t = 0; t < trials; ++t) {
    int dc = static_cast<int>(uniform_int(rng, 0, std::max(0, degree_bound)));
    if (auto r = try_cofactor(random_poly(f, rng, dc, height_bound))) return *r;
    if (n < 2) continue;
    int d1 = static_cast<int>(uniform_int(rng, 1, static_cast<long>(n) - 1));
    int d2 = static_cast<int>(uniform_int(rng, 1, static_cast<long>(n) - 1));
    P h1 = random_poly(f, rng, d1, height_bound, true);
    P h2 = random_poly(f, rng, d2, height_bound, true);
    // Product-shaped candidates: the random pair and phi split at a center.
    std::vector<std::pair<P, P>> pairs{{h1, h2}};
    auto [q, r] = phi.divmod(h1);
    if (r.is_zero() && q.degree() >= 1) pairs.push_back({h1, q});
    for (const auto& [a, b] : pairs) {
      P prod = a * b;
      if (v_divides(v, phi, prod))
        return Verdict::reject("phi is not v-irreducible or not v-minimal",
                               {"h1=" + a.str(), "h2=" + b.str()});
    }
  }
  return Verdict::accept();
}

} // namespace valchain
