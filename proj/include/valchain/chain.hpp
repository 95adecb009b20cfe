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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valchain/errors.hpp"
#include "valchain/poly.hpp"
#include "valchain/valuation.hpp"
#include "valchain/value.hpp"

namespace valchain {

template <class F>
struct AugRecord {
  enum class Kind { Ordinary, Limit, StableFamily };
  Kind kind = Kind::Ordinary;
  Poly<F> phi;
  Value mu;
  FamilyPrefix<F> family;

  static AugRecord ordinary(const Poly<F>& phi, const Value& mu) {
    return {Kind::Ordinary, phi, mu, {}};
  }
  static AugRecord limit(const FamilyPrefix<F>& fam, const Poly<F>& phi, const Value& mu) {
    return {Kind::Limit, phi, mu, fam};
  }
  static AugRecord stable_family(const FamilyPrefix<F>& fam) {
    if (fam.pairs.empty()) throw InvalidChain("empty_family", "family prefix is empty");
    return {Kind::StableFamily, Poly<F>(fam.psi(0).field()), Value::inf(), fam};
  }
  bool has_family() const { return kind != Kind::Ordinary; }
};

inline const char* kind_name(int k) {
  static const char* names[] = {"ordinary", "limit", "stable_family"};
  return names[k];
}

template <class F>
struct Chain {
  GaussVal<F> seed;
  std::vector<AugRecord<F>> augs;

  const F& field() const { return seed.field; }
  Chain prefix(std::size_t n) const {
    Chain c{seed, {}};
    c.augs.assign(augs.begin(), augs.begin() + static_cast<long>(std::min(n, augs.size())));
    return c;
  }
};

namespace detail {

template <class F>
void check_family(const SemiVal<F>& base, const FamilyPrefix<F>& fam, std::size_t idx) {
  std::string where = "record " + std::to_string(idx);
  if (fam.pairs.empty()) throw InvalidChain("empty_family", where + ": family prefix is empty");
  int deg = fam.degree();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& psi = fam.psi(i);
    if (psi.degree() < 1)
      throw InvalidChain("constant_phi", where + ": family key " + std::to_string(i) + " is constant");
    if (!psi.is_monic())
      throw InvalidChain("family_not_monic", where + ": family key " + psi.str() + " is not monic");
    if (psi.degree() != deg)
      throw InvalidChain("family_degree_mismatch", where + ": family keys differ in degree");
    if (fam.gamma(i).is_inf())
      throw InvalidChain("infinite_gamma", where + ": family radius is infinite");
    if (i > 0 && !(fam.gamma(i - 1) < fam.gamma(i)))
      throw InvalidChain("non_increasing_gamma", where + ": family radii must strictly increase");
    if (fam.gamma(i) < base.eval(psi))
      throw InvalidChain("mu_below_v_phi", where + ": family radius " + fam.gamma(i).str() +
                                               " is below v(" + psi.str() + ")");
  }
  if (fam.declared_gamma_limit < fam.gamma(fam.size() - 1))
    throw InvalidChain("limit_below_gamma", where + ": declared limit is below the last radius");
}

} // namespace detail

// The semi-valuations v_0, v_1, ..., v_n along the chain.
template <class F>
std::vector<SemiVal<F>> realize_all(const Chain<F>& c) {
  std::vector<SemiVal<F>> out{SemiVal<F>::gauss(c.seed)};
  for (std::size_t i = 0; i < c.augs.size(); ++i) {
    const auto& r = c.augs[i];
    const SemiVal<F>& v = out.back();
    std::string where = "record " + std::to_string(i);
    using K = typename AugRecord<F>::Kind;
    if (r.kind == K::StableFamily && i + 1 != c.augs.size())
      throw InvalidChain("stable_family_not_last", where + ": a stable family must be last");
    switch (r.kind) {
    case K::Ordinary: {
      if (r.phi.degree() < 1) throw InvalidChain("constant_phi", where + ": key is constant");
      if (r.mu < v.eval(r.phi))
        throw InvalidChain("mu_below_v_phi", where + ": mu " + r.mu.str() + " is below v(" +
                                                 r.phi.str() + ")");
      out.push_back(SemiVal<F>::ordinary(v, r.phi, r.mu));
      break;
    }
    case K::Limit: {
      detail::check_family(v, r.family, i);
      if (r.phi.degree() < r.family.degree())
        throw InvalidChain("limit_degree", where + ": limit key degree is below the family degree");
      SemiVal<F> fam_node = SemiVal<F>::stable_family(v, r.family);
      if (r.mu < fam_node.stage(r.family.size() - 1).eval(r.phi))
        throw InvalidChain("mu_below_v_phi", where + ": limit radius is below the family value of " +
                                                 r.phi.str());
      out.push_back(SemiVal<F>::limit(v, r.family, r.phi, r.mu));
      break;
    }
    case K::StableFamily:
      detail::check_family(v, r.family, i);
      out.push_back(SemiVal<F>::stable_family(v, r.family));
      break;
    }
  }
  return out;
}

template <class F>
SemiVal<F> realize(const Chain<F>& c) {
  return realize_all(c).back();
}

// Step of record i given v = v_{i-1}.
template <class F>
Value record_step(const SemiVal<F>& v, const AugRecord<F>& r) {
  using K = typename AugRecord<F>::Kind;
  if (r.kind == K::Ordinary) return r.mu - v.eval(r.phi);
  const auto& fam = r.family;
  if (fam.size() < 2) throw FamilyPrefixTooShort("family prefix needs at least two stages");
  Value a = v.eval(fam.psi(fam.size() - 2));
  Value b = v.eval(fam.psi(fam.size() - 1));
  if (!(a == b))
    throw FamilyPrefixTooShort("base values of the family keys have not stabilized");
  Value fam_step = fam.declared_gamma_limit - b;
  if (r.kind == K::StableFamily || fam_step.is_inf()) return fam_step;
  if (r.mu.is_inf()) return Value::inf();
  SemiVal<F> node = SemiVal<F>::stable_family(v, fam);
  Value x = r.mu - node.stage(fam.size() - 2).eval(r.phi);
  Value y = r.mu - node.stage(fam.size() - 1).eval(r.phi);
  if (!(x == y))
    throw FamilyPrefixTooShort("mu - v_i(phi) has not stabilized along the family");
  return fam_step + y;
}

template <class F>
std::vector<Value> record_steps(const Chain<F>& c) {
  auto vs = realize_all(c);
  std::vector<Value> out;
  for (std::size_t i = 0; i < c.augs.size(); ++i) out.push_back(record_step(vs[i], c.augs[i]));
  return out;
}

template <class F>
Value step_of(const Chain<F>& c) {
  Value s(0);
  for (const auto& x : record_steps(c)) {
    s = s + x;
    if (s.is_inf()) return s;
  }
  return s;
}

// Every finite radius of the chain (seed radius included).
template <class F>
std::vector<Value> chain_radii(const Chain<F>& c) {
  std::vector<Value> out;
  if (c.seed.radius.is_finite()) out.push_back(c.seed.radius);
  for (const auto& r : c.augs) {
    for (const auto& [psi, g] : r.family.pairs)
      if (g.is_finite()) out.push_back(g);
    if (r.kind != AugRecord<F>::Kind::StableFamily && r.mu.is_finite()) out.push_back(r.mu);
  }
  return out;
}

template <class F>
ValueGroup chain_value_group(const Chain<F>& c) {
  ValueGroup g = c.field().value_group();
  for (const auto& x : chain_radii(c)) g = g.join(x);
  return g;
}

template <class F>
Verdict validate_w_optimal(const Chain<F>& c,
                           const std::vector<std::pair<Poly<F>, Value>>& w_values) {
  auto lookup = [&](const Poly<F>& phi) -> Value {
    for (const auto& [p, v] : w_values)
      if (p == phi) return v;
    throw MissingTargetValue("no target value supplied for " + phi.str());
  };
  Verdict out;
  auto check = [&](const Poly<F>& phi, const Value& radius, const std::string& what) {
    Value w = lookup(phi);
    if (!(w == radius)) {
      out.accepted = false;
      out.witness.push_back(what + ": radius " + radius.str() + " but w(" + phi.str() +
                            ") = " + w.str());
    }
  };
  for (std::size_t i = 0; i < c.augs.size(); ++i) {
    const auto& r = c.augs[i];
    std::string where = "record " + std::to_string(i);
    for (std::size_t j = 0; j < r.family.size(); ++j)
      check(r.family.psi(j), r.family.gamma(j), where + " family " + std::to_string(j));
    if (r.kind != AugRecord<F>::Kind::StableFamily) check(r.phi, r.mu, where);
  }
  if (!out.accepted) out.reason = "radius differs from the target valuation";
  return out;
}

// Computable surrogate of the MacLane-Vaquie conditions, comparing each
// record with its predecessor only.
template <class F>
Verdict validate_mlv(const Chain<F>& c) {
  Verdict out;
  out.notes.push_back("surrogate check");
  auto vs = realize_all(c);
  using K = typename AugRecord<F>::Kind;
  std::optional<Poly<F>> prev;
  for (std::size_t i = 0; i < c.augs.size(); ++i) {
    const auto& r = c.augs[i];
    const SemiVal<F>& v = vs[i];
    std::string where = "record " + std::to_string(i);
    auto fail = [&](const std::string& why) {
      out.accepted = false;
      out.witness.push_back(where + ": " + why);
    };
    if (r.kind == K::Ordinary) {
      if (prev) {
        if (r.phi.degree() < prev->degree())
          fail("key degree decreases");
        else if (r.phi.degree() == prev->degree() && v_equivalent(v, r.phi, *prev))
          fail("degree-stationary key is v-equivalent to the previous key");
      }
      prev = r.phi;
    } else {
      const auto& psi = r.family.psi(0);
      if (prev) {
        if (psi.degree() < prev->degree())
          fail("family degree is below the previous key degree");
        else if (psi.degree() == prev->degree() && v_equivalent(v, psi, *prev))
          fail("family key is v-equivalent to the previous key");
      }
      if (r.kind == K::Limit && r.phi.degree() < psi.degree())
        fail("limit key degree is below the family degree");
      prev = r.kind == K::Limit ? r.phi : r.family.psi(r.family.size() - 1);
    }
  }
  if (!out.accepted) out.reason = "MacLane-Vaquie surrogate condition failed";
  return out;
}

} // namespace valchain
