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
#include "valchain/enlarge.hpp"

#include <stdexcept>

#include "valchain/errors.hpp"

namespace valchain {

namespace {

Value vz(const mpz_class& z) { return Value(mpq_class(z)); }

std::string zs(const mpz_class& z) { return z.get_str(); }

// mu - v_phi, with mixed radicals reported as unsupported.
Value excess(const EnlargementSpec& s) {
  try {
    return s.mu - s.v_phi;
  } catch (const MixedIrrationals& e) {
    throw UnsupportedIrrational(std::string("mu - v(phi) is not a quadratic value: ") + e.what());
  }
}

// floor(x / delta) for delta > 0, possibly across two radicals.
mpz_class floor_ratio(const Value& x, const Value& delta) {
  try {
    return (x / delta).floor();
  } catch (const MixedIrrationals&) {
  }
  auto le = [&](const mpz_class& j) { return compare_mixed(vz(j) * delta, x) <= 0; };
  mpz_class lo(0), hi(1);
  if (le(lo)) {
    while (le(hi)) hi *= 2;
  } else {
    hi = 0;
    lo = -1;
    while (!le(lo)) lo *= 2;
  }
  // le(lo) holds, le(hi) fails
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (mid >= hi) mid = hi - 1;
    if (mid <= lo) mid = lo + 1;
    if (le(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// A positive element of the group below eps, by the real Euclidean algorithm
// on a Z-basis.
Value small_positive(const ValueGroup& g, const Value& eps) {
  if (g.is_discrete()) return Value(g.gamma());
  auto basis = g.basis();
  if (basis.size() < 2) throw UnsupportedIrrational("value group is not dense");
  Value a = basis[0].sign() < 0 ? -basis[0] : basis[0];
  Value b = basis[1].sign() < 0 ? -basis[1] : basis[1];
  auto below = [&](const Value& x) { return compare_mixed(x, eps) < 0; };
  while (!below(a) && !below(b)) {
    if (a > b)
      a = a - vz(floor_ratio(a, b)) * b;
    else
      b = b - vz(floor_ratio(b, a)) * a;
  }
  return below(a) ? a : b;
}

Value pow2_fraction(const Value& x, std::size_t k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return x / vz(p);
}

std::vector<PresentationStage> aleph_stages(const EnlargementSpec& s, std::size_t n) {
  const mpz_class m = *s.m;
  Value ex = excess(s);
  Value alpha = vz(m) * s.mu;
  auto make = [&](const mpz_class& l, const Value& vbeta, const mpz_class& d,
                  const mpz_class& e) {
    PresentationStage st;
    st.index = "(beta, l) with v(beta) = " + vbeta.str() + ", l = " + zs(l);
    st.index_values = {{"l", zs(l)},          {"m", zs(m)},
                       {"d", zs(d)},          {"e", zs(e)},
                       {"v(alpha)", alpha.str()}, {"v(beta)", vbeta.str()},
                       {"v(theta)", s.v_phi.str()}};
    st.generators = {"X", "Z", "Y"};
    st.relations = {"X*Z - 1", "Z^" + zs(l) + "*Y^" + zs(m) + " - alpha*beta^-" + zs(m),
                    "alpha^-" + zs(e) + "*beta^" + zs(d) + "*theta^-1*Z^" + zs(e) + "*Y^" +
                        zs(d) + " - theta^-1*phi"};
    Value wy = vz(l) * s.mu - vbeta;
    st.jac_det_valuation = ex + vz(m - 1) * wy;
    return st;
  };
  if (s.base_group.is_discrete()) {
    // Maximal element: l*mu - v(beta) = gamma / m.
    Value gamma(s.base_group.gamma());
    mpq_class ratio = (s.mu / gamma).rational();
    mpz_class N = ratio.get_num() * (m / ratio.get_den());
    mpz_class l(1), d(1);
    if (m > 1) {
      mpz_invert(l.get_mpz_t(), mpz_class(N % m + m).get_mpz_t(), m.get_mpz_t());
      mpz_invert(d.get_mpz_t(), l.get_mpz_t(), m.get_mpz_t());
    }
    mpz_class a = (l * N - 1) / m;
    mpz_class e = (l * d - 1) / m;
    return {make(l, vz(a) * gamma, d, e)};
  }
  // Dense group: l = 1 and v(beta_k) increasing to mu from below.
  std::vector<PresentationStage> out;
  Value prev = s.v_phi;
  for (std::size_t k = 1; k <= n; ++k) {
    Value eps = pow2_fraction(ex, k);
    if (ex.sign() == 0) eps = Value(mpq_class(1, 1u << std::min<std::size_t>(k, 30)));
    Value delta = small_positive(s.base_group, eps);
    // largest multiple of delta strictly below mu
    mpz_class j = floor_ratio(s.mu, delta);
    Value x = vz(j) * delta;
    if (!(x < s.mu)) x = vz(j - 1) * delta;
    if (x < prev) x = prev;
    prev = x;
    out.push_back(make(1, x, 1, 0));
  }
  return out;
}

std::vector<PresentationStage> beth_stages(const EnlargementSpec& s, std::size_t n) {
  Value ex = excess(s);
  std::vector<PresentationStage> out;
  for (std::size_t k = 1; k <= n; ++k) {
    Value delta = small_positive(s.base_group, pow2_fraction(ex, k));
    mpz_class j = floor_ratio(s.mu, delta);
    Value va = vz(j) * delta, vb = vz(j + 1) * delta;
    PresentationStage st;
    st.index = "(alpha, beta) with v(alpha) = " + va.str() + ", v(beta) = " + vb.str();
    st.index_values = {{"v(alpha)", va.str()}, {"v(beta)", vb.str()}, {"v(theta)", s.v_phi.str()}};
    st.generators = {"X", "Y"};
    st.relations = {"X*Y - alpha^-1*beta", "theta^-1*alpha*X - theta^-1*phi"};
    st.jac_det_valuation = ex;
    out.push_back(st);
  }
  return out;
}

std::vector<PresentationStage> gimel_stages(const EnlargementSpec& s, std::size_t n) {
  Value ex = excess(s);
  if (!ex.is_quad()) throw UnsupportedIrrational("mu - v(phi) must be a quadratic irrational");
  Value gamma(s.base_group.gamma());
  auto conv = convergents(ex / gamma, 2 * n);
  std::vector<PresentationStage> out;
  for (std::size_t i = 0; i < n && 2 * i + 1 < conv.size(); ++i) {
    const auto& [a0, b0] = conv[2 * i];
    const auto& [a1, b1] = conv[2 * i + 1];
    Value wx = vz(b0) * ex - gamma * vz(a0);
    Value wy = gamma * vz(a1) - vz(b1) * ex;
    PresentationStage st;
    st.index = "i = " + std::to_string(i);
    st.index_values = {{"i", std::to_string(i)}, {"a_2i", zs(a0)}, {"b_2i", zs(b0)},
                       {"a_2i+1", zs(a1)},       {"b_2i+1", zs(b1)}, {"w(X)", wx.str()},
                       {"w(Y)", wy.str()},       {"v(pi)", gamma.str()}};
    st.generators = {"X", "Y"};
    st.relations = {"X^" + zs(b1) + "*Y^" + zs(b0) + " - pi",
                    "X^" + zs(a1) + "*Y^" + zs(a0) + " - theta^-1*phi"};
    st.jac_det_valuation = gamma + ex - (wx + wy);
    out.push_back(st);
  }
  return out;
}

std::vector<PresentationStage> daleth_stages(const EnlargementSpec& s, std::size_t n) {
  std::vector<PresentationStage> out;
  for (std::size_t k = 1; k <= n; ++k) {
    Value va = s.v_phi + Value(static_cast<long>(k));
    PresentationStage st;
    st.index = "alpha with v(alpha) = " + va.str();
    st.index_values = {{"v(alpha)", va.str()}, {"v(theta)", s.v_phi.str()}};
    st.generators = {"X"};
    st.relations = {"theta^-1*alpha*X - theta^-1*phi"};
    st.jac_det_valuation = va - s.v_phi;
    out.push_back(st);
  }
  return out;
}

} // namespace

const char* case_name(EnlargeCase c) {
  switch (c) {
  case EnlargeCase::Aleph:
    return "aleph";
  case EnlargeCase::Beth:
    return "beth";
  case EnlargeCase::Gimel:
    return "gimel";
  case EnlargeCase::Daleth:
    return "daleth";
  }
  return "?";
}

EnlargementSpec classify(const ValueGroup& group, const Value& v_phi, const Value& mu) {
  if (v_phi.is_inf()) throw InvalidRadius("v(phi) must be finite");
  if (compare_mixed(mu, v_phi) < 0)
    throw InvalidRadius("mu " + mu.str() + " is below v(phi) " + v_phi.str());
  EnlargementSpec s{group, v_phi, mu, EnlargeCase::Aleph, std::nullopt};
  if (mu.is_inf()) {
    s.kind = EnlargeCase::Daleth;
  } else if (auto m = group.min_multiple_in(mu)) {
    s.kind = EnlargeCase::Aleph;
    s.m = *m;
  } else {
    s.kind = group.is_discrete() ? EnlargeCase::Gimel : EnlargeCase::Beth;
  }
  return s;
}

std::vector<PresentationStage> stages(const EnlargementSpec& spec, std::size_t how_many) {
  switch (spec.kind) {
  case EnlargeCase::Aleph:
    return aleph_stages(spec, how_many);
  case EnlargeCase::Beth:
    return beth_stages(spec, how_many);
  case EnlargeCase::Gimel:
    return gimel_stages(spec, how_many);
  case EnlargeCase::Daleth:
    return daleth_stages(spec, how_many);
  }
  return {};
}

Value lim_dets_target(const EnlargementSpec& spec) {
  if (spec.mu.is_inf()) return Value::inf();
  Value fudge = spec.base_group.inf_positive() - spec.base_group.join(spec.mu).inf_positive();
  return excess(spec) + fudge;
}

LimDetsReport lim_dets_check(const EnlargementSpec& spec, std::size_t stages_count,
                             const Value& tol, const Value& finite_bound) {
  if (stages_count < 2) throw std::invalid_argument("lim_dets_check needs at least two stages");
  LimDetsReport r;
  r.target = lim_dets_target(spec);
  for (const auto& st : stages(spec, stages_count)) r.sequence.push_back(st.jac_det_valuation);
  if (r.sequence.empty()) throw std::runtime_error("no stages produced");
  r.last = r.sequence.back();
  if (r.target.is_inf()) {
    for (std::size_t i = 1; i < r.sequence.size(); ++i)
      if (r.sequence[i] < r.sequence[i - 1]) r.monotone = false;
    r.within_tolerance = r.last > finite_bound;
    r.detail = "target infinite; last stage " + r.last.str() + " vs bound " + finite_bound.str();
  } else {
    auto gap = [&](const Value& x) {
      Value d = r.target - x;
      return d.sign() < 0 ? -d : d;
    };
    for (std::size_t i = 1; i < r.sequence.size(); ++i)
      if (gap(r.sequence[i]) > gap(r.sequence[i - 1])) r.monotone = false;
    r.within_tolerance = !(gap(r.last) > tol);
    r.detail = "|target - last| = " + gap(r.last).str();
  }
  r.pass = r.monotone && r.within_tolerance;
  return r;
}

std::vector<std::pair<mpz_class, mpz_class>> convergents(const Value& x0, std::size_t n) {
  if (!x0.is_finite()) throw std::invalid_argument("continued fraction of infinity");
  std::vector<std::pair<mpz_class, mpz_class>> out;
  mpz_class p2(0), p1(1), q2(1), q1(0);
  Value x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    mpz_class a = x.floor();
    mpz_class p = a * p1 + p2, q = a * q1 + q2;
    out.emplace_back(p, q);
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    Value frac = x - vz(a);
    if (frac.sign() == 0) break;
    x = frac.inverse();
  }
  return out;
}

} // namespace valchain
