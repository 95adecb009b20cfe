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

#include "valchain/chain.hpp"
#include "valchain/errors.hpp"
#include "valchain/valuation.hpp"
#include "valchain/value.hpp"

namespace valchain {

// Named results plus the intermediates they were computed from, in
// insertion order.
struct InvariantReport {
  std::vector<std::pair<std::string, Value>> values;
  std::vector<std::pair<std::string, std::string>> notes;

  void set(const std::string& k, const Value& v) {
    for (auto& [name, val] : values)
      if (name == k) {
        val = v;
        return;
      }
    values.emplace_back(k, v);
  }
  const Value& get(const std::string& k) const {
    for (const auto& [name, val] : values)
      if (name == k) return val;
    throw std::out_of_range("no report entry " + k);
  }
  bool has(const std::string& k) const {
    for (const auto& [name, val] : values)
      if (name == k) return true;
    return false;
  }
  void note(const std::string& k, const std::string& v) { notes.emplace_back(k, v); }
};

template <class F>
struct FiniteExtProblem {
  Chain<F> chain;
  Poly<F> f;

  explicit FiniteExtProblem(const Chain<F>& c)
      : chain(c), f(c.augs.empty() ? Poly<F>(c.field()) : c.augs.back().phi) {}
  FiniteExtProblem(const Chain<F>& c, const Poly<F>& poly) : chain(c), f(poly) {}
};

struct DifferentResult {
  Value different;
  Value log_different;
  bool inseparable = false;
  InvariantReport report;
};

enum class DiscMode { DLinear, DlogLinear };

struct KeyTerm {
  std::string key;
  Value w_phi;
  Value w_dphi;
  Value term;
  std::string note;
};

struct KahlerResult {
  Value value;
  std::vector<KeyTerm> terms;
};

struct AbsLogResult {
  bool finite = true;
  Value value;
  std::vector<Value> sequence;
  bool non_decreasing = true;
  InvariantReport report;
};

// inf Gamma_{K,>0} - inf Gamma_{w,>0}
template <class F>
Value fudge_term(const Chain<F>& c) {
  return c.field().value_group().inf_positive() - chain_value_group(c).inf_positive();
}

template <class F>
DifferentResult different(const FiniteExtProblem<F>& prob) {
  using K = typename AugRecord<F>::Kind;
  const Chain<F>& c = prob.chain;
  const F& fld = c.field();
  if (c.augs.empty()) throw InvalidChain("not_finite_extension", "chain has no records");
  const auto& last = c.augs.back();
  if (last.kind == K::StableFamily || !last.mu.is_inf())
    throw InvalidChain("not_finite_extension", "final record must have infinite radius");
  if (!(last.phi == prob.f))
    throw InvalidChain("f_mismatch", "f must equal the final key polynomial");
  if (!prob.f.is_monic()) throw InvalidChain("f_not_monic", "f must be monic");
  for (const auto& a : prob.f.coeffs())
    if (fld.vk(a) < Value(0))
      throw InvalidChain("f_not_integral", "f must have integral coefficients");
  realize(c);

  DifferentResult r;
  Poly<F> df = prob.f.derivative();
  Value fudge = fudge_term(c);
  r.report.set("fudge", fudge);
  r.report.note("value_group_L", chain_value_group(c).str());
  if (df.is_zero()) {
    r.inseparable = true;
    r.different = r.log_different = Value::inf();
    r.report.note("derivative", "f' = 0 (inseparable)");
    r.report.set("different", r.different);
    r.report.set("log_different", r.log_different);
    return r;
  }
  Chain<F> prefix = c.prefix(c.augs.size() - 1);
  Value prefix_step = step_of(prefix);
  SemiVal<F> v = realize(prefix);
  Value log_d;
  if (last.kind == K::Ordinary) {
    Value vf = v.eval(prob.f), vdf = v.eval(df);
    r.report.set("step_prefix", prefix_step);
    r.report.set("v_prev(f)", vf);
    r.report.set("v_prev(f')", vdf);
    log_d = prefix_step - vf + vdf;
  } else {
    const auto& fam = last.family;
    if (fam.size() < 2) throw FamilyPrefixTooShort("family prefix needs at least two stages");
    std::vector<Value> seq;
    for (std::size_t j = fam.size() - 2; j < fam.size(); ++j) {
      SemiVal<F> bj = SemiVal<F>::ordinary(v, fam.psi(j), fam.gamma(j));
      Value step_b = fam.gamma(j) - v.eval(fam.psi(j));
      Value vf = bj.eval(prob.f), vdf = bj.eval(df);
      seq.push_back(prefix_step + step_b - vf + vdf);
      r.report.set("step_family_stage", step_b);
      r.report.set("v_stage(f)", vf);
      r.report.set("v_stage(f')", vdf);
    }
    if (!(seq[0] == seq[1]))
      throw FamilyPrefixTooShort("log different has not stabilized along the family (" +
                                 seq[0].str() + " then " + seq[1].str() + ")");
    r.report.set("step_prefix", prefix_step);
    log_d = seq[1];
  }
  r.log_different = log_d;
  r.different = log_d + fudge;
  r.report.set("different", r.different);
  r.report.set("log_different", r.log_different);
  return r;
}

template <class F>
DifferentResult different(const Chain<F>& c) {
  return different(FiniteExtProblem<F>(c));
}

template <class F>
Value discrepancy(const Chain<F>& c, DiscMode mode, InvariantReport* rep = nullptr) {
  InvariantReport local;
  InvariantReport& r = rep ? *rep : local;
  Value step = step_of(c);
  r.set("step", step);
  if (mode == DiscMode::DLinear) {
    if (!c.seed.is_simple())
      throw InvalidChain("seed_not_simple", "DLinear needs a seed radius in the value group of K");
    Value fudge = fudge_term(c);
    r.set("fudge", fudge);
    r.set("discrepancy", step + fudge);
    return step + fudge;
  }
  if (step.is_inf()) {
    r.set("discrepancy", step);
    return step;
  }
  // Measured from [v_K, phi0, w(phi0)]: subtract the distance from the seed.
  Value w_phi0 = realize(c).eval(c.seed.phi0());
  Value correction = w_phi0 - c.seed.radius;
  r.set("w(phi0)", w_phi0);
  r.set("seed_correction", correction);
  r.set("discrepancy", step - correction);
  return step - correction;
}

template <class F>
void require_no_kernel(const Chain<F>& c) {
  if (c.seed.radius.is_inf()) throw KernelPresent("seed radius is infinite");
  for (const auto& r : c.augs)
    if (r.kind != AugRecord<F>::Kind::StableFamily && r.mu.is_inf())
      throw KernelPresent("chain has a record with infinite radius; w is not a valuation");
}

template <class F>
KahlerResult kahler_dT(const Chain<F>& c) {
  using K = typename AugRecord<F>::Kind;
  require_no_kernel(c);
  SemiVal<F> w = realize(c);
  KahlerResult out;
  auto seen = [&](const std::string& key) {
    for (const auto& t : out.terms)
      if (t.key == key) return true;
    return false;
  };
  auto add = [&](KeyTerm t) {
    if (seen(t.key)) return;
    if (out.terms.empty() || t.term > out.value) out.value = t.term;
    out.terms.push_back(std::move(t));
  };
  auto key_term = [&](const Poly<F>& phi) {
    Poly<F> d = phi.derivative();
    if (d.is_zero()) return KeyTerm{phi.str(), w.eval(phi), Value::inf(), Value(0), "phi' = 0, skipped"};
    Value a = w.eval(phi), b = w.eval(d);
    return KeyTerm{phi.str(), a, b, a - b, ""};
  };
  Poly<F> phi0 = c.seed.phi0();
  add(key_term(phi0));
  for (const auto& r : c.augs) {
    if (r.kind == K::Ordinary || r.kind == K::Limit) {
      KeyTerm t = key_term(r.phi);
      if (!t.note.empty()) {
        if (!seen(t.key)) out.terms.push_back(t);
      } else {
        add(t);
      }
    }
    if (r.kind == K::Ordinary) continue;
    // Family members: sup of gamma_i - w(psi_i') is the declared limit minus
    // the stable value of w(psi').
    const auto& fam = r.family;
    if (fam.size() < 2) throw FamilyPrefixTooShort("family prefix needs at least two stages");
    Poly<F> d1 = fam.psi(fam.size() - 2).derivative(), d2 = fam.psi(fam.size() - 1).derivative();
    if (d2.is_zero()) {
      out.terms.push_back({"family", fam.declared_gamma_limit, Value::inf(), Value(0),
                           "psi' = 0, skipped"});
      continue;
    }
    Value a = w.eval(d1), b = w.eval(d2);
    if (!(a == b))
      throw FamilyPrefixTooShort("w(psi') has not stabilized along the family");
    Value term = fam.declared_gamma_limit - b;
    std::string name = "family[" + fam.psi(0).str() + " .. " + fam.psi(fam.size() - 1).str() + "]";
    add({name, fam.declared_gamma_limit, b, term, "declared limit"});
    for (std::size_t j = 0; j < fam.size(); ++j) {
      KeyTerm t = key_term(fam.psi(j));
      if (seen(t.key)) continue;
      if (t.note.empty() && t.term > out.value) out.value = t.term;
      t.note = "family member";
      out.terms.push_back(t);
    }
  }
  return out;
}

// step + seed radius - kahler_dT, measured from [v_K, phi0, w(phi0)].
template <class F>
Value abs_log_different_finite(const Chain<F>& c, InvariantReport& rep) {
  Value step = step_of(c);
  if (step.is_inf()) throw std::logic_error("finite formula used on an infinite step");
  KahlerResult k = kahler_dT(c);
  Value w_phi0 = realize(c).eval(c.seed.phi0());
  Value corrected = step - (w_phi0 - c.seed.radius);
  rep.set("step", step);
  rep.set("w(phi0)", w_phi0);
  rep.set("step_from_w_phi0", corrected);
  rep.set("kahler_dT", k.value);
  Value out = corrected + w_phi0 - k.value;
  rep.set("abs_log_different", out);
  return out;
}

template <class F>
AbsLogResult abs_log_different(const Chain<F>& c) {
  using K = typename AugRecord<F>::Kind;
  require_no_kernel(c);
  AbsLogResult out;
  Value step = step_of(c);
  if (step.is_finite()) {
    out.value = abs_log_different_finite(c, out.report);
    return out;
  }
  out.finite = false;
  if (c.augs.empty() || c.augs.back().kind != K::StableFamily)
    throw InvalidChain("infinite_step_unsupported",
                       "an infinite step is only supported for a final stable family");
  const auto& fam = c.augs.back().family;
  Chain<F> base = c.prefix(c.augs.size() - 1);
  for (std::size_t j = 0; j < fam.size(); ++j) {
    Chain<F> cj = base;
    cj.augs.push_back(AugRecord<F>::ordinary(fam.psi(j), fam.gamma(j)));
    InvariantReport tmp;
    out.sequence.push_back(abs_log_different_finite(cj, tmp));
  }
  for (std::size_t j = 1; j < out.sequence.size(); ++j)
    if (out.sequence[j] < out.sequence[j - 1]) out.non_decreasing = false;
  out.value = out.sequence.back();
  out.report.set("step", step);
  out.report.note("limit", "not extrapolated; sequence over family stages");
  return out;
}

} // namespace valchain
