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
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chain_gen.hpp"
#include "matrices.hpp"
#include "valchain/enlarge.hpp"
#include "valchain/invariants.hpp"
#include "valchain/modcontent.hpp"

using namespace valchain;

namespace {

using Q = PAdicRationals;
using L = LaurentRationalFunctions;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> analysis;
};

int failures = 0;

void report(const std::string& id, const std::string& name, double limit_ms,
            const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = ms < limit_ms;
  bool ok = o.pass && in_time;
  if (!ok) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.1f ms / %.0f ms", ms, limit_ms);
  std::cout << (ok ? "PASS " : "FAIL ") << id << " " << name << " [" << timing << "]";
  if (!in_time) std::cout << " time limit exceeded;";
  if (!o.detail.empty()) std::cout << " " << o.detail;
  std::cout << "\n";
  for (const auto& a : o.analysis) std::cout << "     | " << a << "\n";
}

Value V(const std::string& s) { return Value::parse(s); }

template <class F>
Chain<F> make_chain(const F& f, const std::string& center, const std::string& radius,
                    const std::vector<std::pair<std::string, std::string>>& ordinary) {
  Chain<F> c{GaussVal<F>{f, parse_element(f, center), V(radius)}, {}};
  for (const auto& [phi, mu] : ordinary) c.augs.push_back(AugRecord<F>::ordinary(parse_poly(f, phi), V(mu)));
  return c;
}

Chain<Q> pure_root_chain(long e, long p) {
  return make_chain(Q(p), "0", "0",
                    {{"T", "1/" + std::to_string(e)}, {"T^" + std::to_string(e) + "-" + std::to_string(p), "inf"}});
}

// Sylvester matrix of f and g with integer coefficients.
mpq_class resultant(const std::vector<mpq_class>& f, const std::vector<mpq_class>& g) {
  std::size_t m = f.size() - 1, n = g.size() - 1, N = m + n;
  testutil::QMat s(N, std::vector<mpq_class>(N, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  return testutil::det(s);
}

// Oracle for Q_p(theta), theta^e = p: the extension is totally ramified of
// degree e, so v(f'(theta)) = v(N f'(theta)) / e = v(Res(f, f')) / e, and
// the log different drops v(pi_L) complement 1 - 1/e.
std::pair<Value, Value> eisenstein_oracle(long e, long p) {
  std::vector<mpq_class> f(static_cast<std::size_t>(e + 1), 0), df(static_cast<std::size_t>(e), 0);
  f[0] = -p;
  f[static_cast<std::size_t>(e)] = 1;
  df[static_cast<std::size_t>(e - 1)] = e;
  mpq_class res = resultant(f, df);
  long k = 0;
  mpz_class n = abs(res.get_num());
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  Value diff(mpq_class(k, e));
  return {diff, diff - Value(mpq_class(e - 1, e))};
}

Value abs_value(const Value& x) { return x.sign() < 0 ? -x : x; }

std::string index_value(const PresentationStage& s, const std::string& k) {
  for (const auto& [key, v] : s.index_values)
    if (key == k) return v;
  throw std::runtime_error("missing stage index " + k);
}

std::string run_capture(const std::string& cmd) {
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  if (!WIFEXITED(st) || WEXITSTATUS(st) != 0) throw std::runtime_error("nonzero exit: " + cmd);
  return out;
}

Outcome tame_different() {
  Outcome o;
  for (auto [e, p] : std::vector<std::pair<long, long>>{{2, 3}, {2, 5}, {3, 5}, {4, 3}}) {
    auto d = different(pure_root_chain(e, p));
    auto [od, olog] = eisenstein_oracle(e, p);
    Value want(mpq_class(e - 1, e));
    bool ok = d.different == want && d.log_different == Value(0) && d.different == od &&
              d.log_different == olog;
    if (!ok) {
      o.pass = false;
      o.analysis.push_back("e=" + std::to_string(e) + " p=" + std::to_string(p) + ": got (" +
                           d.different.str() + ", " + d.log_different.str() + "), oracle (" + od.str() +
                           ", " + olog.str() + ")");
    }
  }
  o.detail = "4 cases";
  return o;
}

// The stated log part (p-1)/p is checked literally.
Outcome wild_different_literal() {
  Outcome o;
  for (long p : {2L, 3L, 5L}) {
    auto d = different(pure_root_chain(p, p));
    Value wd(mpq_class(2 * p - 1, p)), wl(mpq_class(p - 1, p));
    auto [od, olog] = eisenstein_oracle(p, p);
    bool ok = d.different == wd && d.log_different == wl;
    if (!ok) o.pass = false;
    o.analysis.push_back("p=" + std::to_string(p) + ": got (" + d.different.str() + ", " +
                         d.log_different.str() + "), stated (" + wd.str() + ", " + wl.str() +
                         "), resultant oracle (" + od.str() + ", " + olog.str() + ")");
  }
  if (!o.pass) {
    o.detail = "log part disagrees with the stated (p-1)/p";
    o.analysis.push_back("the different (2p-1)/p matches the resultant oracle in every case");
    o.analysis.push_back("log different = different - (1 - 1/p) = 1, the classical value for T^p - p;");
    o.analysis.push_back("the Q_2 worked example (3/2, 1) agrees with 1, not with (p-1)/p = 1/2");
  }
  return o;
}

Outcome wild_different_oracle() {
  Outcome o;
  for (long p : {2L, 3L, 5L}) {
    auto d = different(pure_root_chain(p, p));
    auto [od, olog] = eisenstein_oracle(p, p);
    if (!(d.different == od && d.log_different == olog && d.different == Value(mpq_class(2 * p - 1, p))))
      o.pass = false;
  }
  o.detail = "((2p-1)/p, 1) for p in {2,3,5}";
  return o;
}

Outcome inseparable() {
  Outcome o;
  for (long p : {2L, 3L}) {
    L f(p);
    std::string key = "T^" + std::to_string(p) + "-t";
    auto c = make_chain(f, "0", "0", {{"T", "1/" + std::to_string(p)}, {key, "inf"}});
    // Independent check that f' vanishes: every exponent carrying a
    // nonzero coefficient is divisible by p.
    auto phi = parse_poly(f, key);
    bool zero = true;
    for (int i = 0; i <= phi.degree(); ++i)
      if (!f.is_zero(phi.coeff(static_cast<std::size_t>(i))) && i % p != 0) zero = false;
    auto d = different(c);
    bool noted = false;
    for (const auto& [k, v] : d.report.notes)
      if (k == "derivative" && v.find("f' = 0") != std::string::npos) noted = true;
    if (!(zero && d.inseparable && d.different.is_inf() && d.log_different.is_inf() && noted)) {
      o.pass = false;
      o.analysis.push_back("p=" + std::to_string(p) + ": got (" + d.different.str() + ", " +
                           d.log_different.str() + ")");
    }
  }
  o.detail = "(inf, inf) with f' = 0 reported";
  return o;
}

template <class F>
void collect_chains(const F& f, Rng& rng, int n, std::vector<Chain<F>>& out) {
  for (int i = 0; i < n; ++i) out.push_back(testutil::random_chain(f, rng));
}

struct IdentityCount {
  int total = 0, literal = 0, corrected = 0, w0_zero = 0;
};

IdentityCount identity_counts() {
  IdentityCount memo;
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    Q f(i % 2 ? 5 : 3);
    auto c = testutil::random_chain(f, rng);
    Value disc = discrepancy(c, DiscMode::DlogLinear);
    Value k = kahler_dT(c).value;
    Value abs = abs_log_different(c).value;
    Value w0 = realize(c).eval(c.seed.phi0());
    ++memo.total;
    if (disc == k + abs) ++memo.literal;
    if (disc == (k - w0) + abs) ++memo.corrected;
    if (w0 == Value(0)) ++memo.w0_zero;
  }
  return memo;
}

Outcome identity_literal() {
  IdentityCount n = identity_counts();
  Outcome o;
  o.pass = n.literal == n.total;
  o.detail = std::to_string(n.literal) + "/" + std::to_string(n.total) + " chains satisfy disc = kahler + abs";
  if (!o.pass) {
    o.analysis.push_back("failures are exactly the chains whose seed radius w(phi0) is nonzero (" +
                         std::to_string(n.total - n.w0_zero) + " of them)");
    o.analysis.push_back("disc^log is measured against dlog(phi0) = dT/phi0, so the Kahler part is");
    o.analysis.push_back("kv(dT) - w(phi0); the identity as stated drops the w(phi0) shift");
  }
  return o;
}

Outcome identity_shifted() {
  IdentityCount n = identity_counts();
  Outcome o;
  o.pass = n.corrected == n.total;
  o.detail = std::to_string(n.corrected) + "/" + std::to_string(n.total) +
             " chains satisfy disc = (kahler - w(phi0)) + abs";
  return o;
}

Outcome lim_dets() {
  Outcome o;
  auto a = classify(ValueGroup::integers(), V("0"), V("1/2"));
  auto ast = stages(a, 5);
  Value want = V("1/2") - V("0") + (V("1") - V("1/2"));
  bool aleph = a.kind == EnlargeCase::Aleph && ast.size() == 1 && ast.back().jac_det_valuation == V("1") &&
               want == V("1");
  if (!aleph) {
    o.pass = false;
    o.analysis.push_back("aleph: got " + (ast.empty() ? std::string("no stage") : ast.back().jac_det_valuation.str()));
  }

  auto g = classify(ValueGroup::integers(), V("0"), V("sqrt(2)"));
  Value target = lim_dets_target(g);
  Value gamma = V("1");
  auto gst = stages(g, 8);
  bool gimel = g.kind == EnlargeCase::Gimel && gst.size() == 8;
  Value prev = Value::inf();
  std::ostringstream seq;
  for (const auto& s : gst) {
    mpz_class b0(index_value(s, "b_2i")), b1(index_value(s, "b_2i+1"));
    Value gap = abs_value(target - s.jac_det_valuation);
    Value bound = gamma / Value(mpq_class(b0)) + gamma / Value(mpq_class(b1));
    if (!(gap <= bound && gap < prev)) gimel = false;
    prev = gap;
    seq << " " << s.jac_det_valuation.str();
  }
  if (!gimel) o.pass = false;
  o.analysis.push_back("gimel target " + target.str() + ", stages" + seq.str());
  o.detail = "aleph det 1, gimel 8 stages tightening";
  return o;
}

Outcome axioms() {
  Outcome o;
  Rng rng(6);
  long checks = 0, bad = 0;
  auto run = [&](const auto& f) {
    for (int k = 0; k < 5; ++k) {
      auto c = testutil::random_chain(f, rng);
      auto vs = realize_all(c);
      const auto& w = vs.back();
      for (int i = 0; i < 1000; ++i) {
        auto g = random_poly(f, rng, static_cast<int>(uniform_int(rng, 0, 5)), 3);
        auto h = random_poly(f, rng, static_cast<int>(uniform_int(rng, 0, 5)), 3);
        Value wg = w.eval(g), wh = w.eval(h);
        if (!(w.eval(g * h) == wg + wh)) ++bad;
        if (!(w.eval(g + h) >= value_min({wg, wh}))) ++bad;
        checks += 2;
        for (std::size_t j = 0; j + 1 < vs.size(); ++j) {
          if (!(vs[j + 1].eval(g) >= vs[j].eval(g))) ++bad;
          ++checks;
        }
      }
    }
  };
  run(Q(3));
  run(Q(5));
  run(L(2));
  run(L(3));
  o.pass = bad == 0;
  o.detail = "20 chains x 1000 pairs, " + std::to_string(checks) + " checks, " + std::to_string(bad) + " violations";
  return o;
}

FpModulePresentation<Q> pres(const Q& f, testutil::QMat m) {
  std::size_t r = m.size();
  return {f, r, std::move(m)};
}

Outcome content_suite() {
  Outcome o;
  Q q3(3);
  Rng rng(7);
  int bad = 0;
  auto random_matrix = [&] {
    std::size_t r = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    std::size_t c = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    testutil::QMat a(r, std::vector<mpq_class>(c));
    for (auto& row : a)
      for (auto& x : row) x = random_element(q3, rng, 3);
    return a;
  };
  for (int t = 0; t < 200; ++t) {
    auto a = random_matrix();
    if (!(content(pres(q3, testutil::scramble(q3, rng, a))) == content(pres(q3, a)))) ++bad;
  }
  for (int t = 0; t < 200; ++t) {
    auto m = pres(q3, random_matrix()), n = pres(q3, random_matrix());
    if (!(content(direct_sum(m, n)) == content(m) + content(n))) ++bad;
  }
  // Diagonal instances: the cokernel is a sum of Z/p^k, of length sum k.
  int diag = 0;
  for (long p : {2L, 3L, 5L}) {
    Q f(p);
    for (int t = 0; t < 40; ++t) {
      std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 5));
      testutil::QMat a(n, std::vector<mpq_class>(n, 0));
      long len = 0;
      for (std::size_t i = 0; i < n; ++i) {
        long k = uniform_int(rng, 0, 6);
        long u = uniform_int(rng, 1, p - 1);
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
        a[i][i] = mpq_class(u * pk);
        len += k;
      }
      if (!(content(pres(f, a)) == Value(len))) ++bad;
      ++diag;
    }
  }
  o.pass = bad == 0;
  o.detail = "200 unimodular, 200 direct sums, " + std::to_string(diag) + " diagonal, " +
             std::to_string(bad) + " mismatches";
  return o;
}

Outcome kahler_falsifier() {
  Outcome o;
  Q q5(5);
  auto c = make_chain(q5, "0", "0", {{"T", "1/2"}, {"T^2-5", "2"}});
  auto w = realize(c);
  Value bound = V("3/2");
  Rng rng(8);
  int over = 0;
  Value best;
  bool seen = false;
  for (int i = 0; i < 5000; ++i) {
    int deg = static_cast<int>(uniform_int(rng, 1, 4));
    std::vector<mpq_class> co;
    for (int j = 0; j < deg; ++j) co.push_back(random_bounded(q5, rng, 125));
    co.push_back(1);
    Poly<Q> f(q5, std::move(co));
    Value d = w.eval(f) - w.eval(f.derivative());
    if (d > bound) ++over;
    if (!seen || d > best) best = d;
    seen = true;
  }
  auto key = parse_poly(q5, "T^2-5");
  Value attained = w.eval(key) - w.eval(key.derivative());
  Value k = kahler_dT(c).value;
  o.pass = over == 0 && attained == bound && k == bound;
  o.detail = "5000 samples, " + std::to_string(over) + " above 3/2, sample max " + best.str() +
             ", key T^2-5 gives " + attained.str() + ", kahler_dT " + k.str();
  return o;
}

Outcome additivity_and_dot() {
  Outcome o;
  Rng rng(9);
  int pairs = 0, bad = 0;
  for (int i = 0; pairs < 100 && i < 5000; ++i) {
    Q f(i % 2 ? 5 : 3);
    auto c = testutil::random_chain(f, rng);
    // The prefix of leading linear records realizes a Gauss valuation,
    // which seeds the second chain.
    std::size_t k = 0;
    while (k < c.augs.size() && c.augs[k].phi.degree() == 1) ++k;
    if (k == 0) continue;
    auto first = c.prefix(k);
    Chain<Q> second{GaussVal<Q>{f, -c.augs[k - 1].phi.coeff(0), c.augs[k - 1].mu},
                    {c.augs.begin() + static_cast<long>(k), c.augs.end()}};
    if (!(step_of(c) == step_of(first) + step_of(second))) ++bad;
    ++pairs;
  }
  std::vector<std::filesystem::path> specs;
  for (const auto& e : std::filesystem::directory_iterator(VALCHAIN_TEST_DATA))
    if (e.path().extension() == ".json") specs.push_back(e.path());
  std::sort(specs.begin(), specs.end());
  int dot_bad = 0;
  for (const auto& s : specs) {
    std::string cmd = std::string(VALCHAIN_BIN) + " --spec '" + s.string() + "' export-dot";
    if (run_capture(cmd) != run_capture(cmd)) ++dot_bad;
  }
  o.pass = pairs == 100 && bad == 0 && dot_bad == 0 && !specs.empty();
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(bad) + " additivity failures; " +
             std::to_string(specs.size()) + " specs, " + std::to_string(dot_bad) + " DOT mismatches";
  return o;
}

} // namespace

int main() {
  report("1", "tame different battery", 1000, tame_different);
  report("2", "wild different battery", 1000, wild_different_literal);
  report("2+", "wild different vs resultant oracle", 1000, wild_different_oracle);
  report("3", "inseparable detection", 1000, inseparable);
  report("4", "log discrepancy identity as stated", 10000, identity_literal);
  report("4+", "log discrepancy identity with w(phi0) shift", 10000, identity_shifted);
  report("5", "limit determinants", 1000, lim_dets);
  report("6", "semi-valuation axioms", 30000, axioms);
  report("7", "content suite", 5000, content_suite);
  report("8", "Kahler falsifier", 10000, kahler_falsifier);
  report("9", "step additivity and DOT determinism", 5000, additivity_and_dot);
  std::cout << (failures ? std::to_string(failures) + " line(s) failed\n" : "all lines passed\n");
  return failures ? 1 : 0;
}
