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
// valchain: command-line front end for augmentation chains.
//
// Exit codes: 0 ok, 1 other failure, 2 invalid input (spec, text, chain or
// presentation), 3 family prefix too short, 4 mixed irrationals,
// 5 kernel present.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "valchain/chain.hpp"
#include "valchain/enlarge.hpp"
#include "valchain/errors.hpp"
#include "valchain/invariants.hpp"
#include "valchain/modcontent.hpp"
#include "valchain/spec_json.hpp"

using namespace valchain;

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5eed;

struct Options {
  std::string spec;
  bool json_errors = false;
  std::uint64_t seed = kDefaultSeed;
  int approx = -1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const std::string& path) {
  if (path.empty()) throw ParseError("no input file given (use --spec)");
  return parse_json_text(read_file(path));
}

// Value output: exact text, plus decimal text under --approx.
class Out {
public:
  explicit Out(int approx) : approx_(approx) {}
  void put(const std::string& k, const Value& v) {
    doc_[k] = v.str();
    if (approx_ >= 0) doc_["approx"][k] = v.approx(approx_);
  }
  json& raw() { return doc_; }
  void print() const { std::cout << doc_.dump(2) << "\n"; }

private:
  int approx_;
  json doc_ = json::object();
};

void put_report(Out& out, const InvariantReport& r) {
  for (const auto& [k, v] : r.values) out.put(k, v);
  for (const auto& [k, v] : r.notes) out.raw()["notes"][k] = v;
}

json verdict_json(const Verdict& v) {
  return {{"accepted", v.accepted}, {"reason", v.reason}, {"witness", v.witness},
          {"notes", v.notes}};
}

template <class Fn>
void with_chain(const Options& o, Fn&& fn) {
  AnyChain c = parse_chain_spec(load_json(o.spec));
  std::visit([&](const auto& chain) { fn(chain); }, c);
}

int run_eval(const Options& o, const std::string& poly) {
  with_chain(o, [&](const auto& c) {
    auto v = realize(c);
    auto f = detail::annotate("polynomial", [&] { return parse_poly(c.field(), poly); });
    Out out(o.approx);
    out.put("value", v.eval(f));
    out.print();
  });
  return 0;
}

int run_step(const Options& o) {
  with_chain(o, [&](const auto& c) {
    Out out(o.approx);
    out.put("step", step_of(c));
    json per = json::array();
    for (const auto& s : record_steps(c)) per.push_back(s.str());
    out.raw()["record_steps"] = per;
    out.print();
  });
  return 0;
}

int run_different(const Options& o) {
  with_chain(o, [&](const auto& c) {
    DifferentResult d = different(c);
    Out out(o.approx);
    out.put("different", d.different);
    out.put("log_different", d.log_different);
    out.raw()["inseparable"] = d.inseparable;
    put_report(out, d.report);
    out.print();
  });
  return 0;
}

int run_discrepancy(const Options& o, const std::string& mode) {
  DiscMode m;
  if (mode == "linear")
    m = DiscMode::DLinear;
  else if (mode == "log")
    m = DiscMode::DlogLinear;
  else
    throw ParseError("--mode must be 'linear' or 'log'");
  with_chain(o, [&](const auto& c) {
    InvariantReport r;
    Value d = discrepancy(c, m, &r);
    Out out(o.approx);
    out.raw()["mode"] = mode;
    put_report(out, r);
    out.put("discrepancy", d);
    out.print();
  });
  return 0;
}

int run_kahler(const Options& o) {
  with_chain(o, [&](const auto& c) {
    KahlerResult k = kahler_dT(c);
    Out out(o.approx);
    out.put("kahler_dT", k.value);
    json terms = json::array();
    for (const auto& t : k.terms)
      terms.push_back({{"key", t.key}, {"w_phi", t.w_phi.str()}, {"w_dphi", t.w_dphi.str()},
                       {"term", t.term.str()}, {"note", t.note}});
    out.raw()["terms"] = terms;
    out.print();
  });
  return 0;
}

int run_abslogdiff(const Options& o) {
  with_chain(o, [&](const auto& c) {
    AbsLogResult a = abs_log_different(c);
    Out out(o.approx);
    out.raw()["finite_step"] = a.finite;
    put_report(out, a.report);
    if (a.finite) {
      out.put("abs_log_different", a.value);
    } else {
      json seq = json::array();
      for (const auto& v : a.sequence) seq.push_back(v.str());
      out.raw()["sequence"] = seq;
      out.raw()["non_decreasing"] = a.non_decreasing;
      out.put("last_term", a.value);
    }
    out.print();
  });
  return 0;
}

int run_content(const Options& o, const std::string& path) {
  json doc = load_json(path.empty() ? o.spec : path);
  auto [kind, p] = base_of(doc);
  Out out(o.approx);
  if (kind == "padic")
    out.put("content", content(presentation_from_json(PAdicRationals(p), doc)));
  else
    out.put("content", content(presentation_from_json(LaurentRationalFunctions(p), doc)));
  out.print();
  return 0;
}

std::vector<Value> parse_value_list(const std::string& text) {
  std::vector<Value> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(Value::parse(item));
  if (out.empty()) throw ParseError("empty generator list");
  return out;
}

struct EnlargeArgs {
  std::string group = "1";
  std::string v_phi = "0";
  std::string mu;
  std::size_t stages = 4;
};

int run_enlarge(const Options& o, EnlargeArgs a) {
  if (!o.spec.empty()) {
    json doc = load_json(o.spec);
    if (doc.contains("group")) {
      std::string g;
      for (const auto& x : doc.at("group")) g += (x.is_string() ? x.get<std::string>() : x.dump()) + ",";
      a.group = g;
    }
    if (doc.contains("v_phi")) a.v_phi = detail::text_at(doc, "v_phi", "enlargement");
    if (doc.contains("mu")) a.mu = detail::text_at(doc, "mu", "enlargement");
    if (doc.contains("stages")) a.stages = doc.at("stages").get<std::size_t>();
  }
  if (a.mu.empty()) throw ParseError("enlarge needs --mu");
  ValueGroup g = ValueGroup::dense(parse_value_list(a.group));
  EnlargementSpec spec = classify(g, Value::parse(a.v_phi), Value::parse(a.mu));
  Out out(o.approx);
  out.raw()["case"] = case_name(spec.kind);
  out.raw()["group"] = g.str();
  if (spec.m) out.raw()["m"] = spec.m->get_str();
  out.put("target", lim_dets_target(spec));
  json st = json::array();
  for (const auto& s : stages(spec, a.stages)) {
    json idx = json::object();
    for (const auto& [k, v] : s.index_values) idx[k] = v;
    json e = {{"index", s.index},
              {"index_values", idx},
              {"generators", s.generators},
              {"relations", s.relations},
              {"jac_det_valuation", s.jac_det_valuation.str()}};
    if (o.approx >= 0) e["approx"] = s.jac_det_valuation.approx(o.approx);
    st.push_back(e);
  }
  out.raw()["stages"] = st;
  out.print();
  return 0;
}

int run_export_dot(const Options& o) {
  AnyChain c = parse_chain_spec(load_json(o.spec));
  std::cout << chain_to_dot(c);
  return 0;
}

// Structural validation, the MacLane-Vaquie surrogate, and a seeded key
// falsifier on every key polynomial.
int run_validate(const Options& o, int trials) {
  with_chain(o, [&](const auto& c) {
    using F = std::decay_t<decltype(c.field())>;
    using K = typename AugRecord<F>::Kind;
    auto vs = realize_all(c);
    json out = json::object();
    out["valid"] = true;
    out["records"] = c.augs.size();
    out["seed_simple"] = c.seed.is_simple();
    json warnings = json::array();
    if (!c.seed.is_simple()) warnings.push_back("seed_not_simple");
    out["warnings"] = warnings;
    out["mlv"] = verdict_json(validate_mlv(c));
    json keys = json::array();
    for (std::size_t i = 0; i < c.augs.size(); ++i) {
      const auto& r = c.augs[i];
      auto check = [&](const SemiVal<F>& v, const Poly<F>& phi, const std::string& role) {
        json k = verdict_json(check_key_plausible(v, phi, trials, 4, 3, o.seed));
        k["record"] = i;
        k["role"] = role;
        k["phi"] = phi.str();
        keys.push_back(k);
      };
      if (r.kind == K::Ordinary) {
        check(vs[i], r.phi, "key");
        continue;
      }
      check(vs[i], r.family.psi(0), "family");
      if (r.kind == K::Limit) {
        std::size_t last = r.family.size() - 1;
        check(SemiVal<F>::ordinary(vs[i], r.family.psi(last), r.family.gamma(last)), r.phi,
              "limit key, checked at the last family stage");
      }
    }
    out["keys"] = keys;
    out["seed"] = o.seed;
    std::cout << out.dump(2) << "\n";
  });
  return 0;
}

int exit_code_for(const Error& e) {
  const std::string& c = e.code();
  if (c == "FamilyPrefixTooShort") return 3;
  if (c == "MixedIrrationals") return 4;
  if (c == "KernelPresent") return 5;
  if (c == "ParseError" || c == "InvalidChain" || c == "InvalidPresentation" ||
      c == "InvalidRadius" || c == "ConstantPhi" || c == "NotInValueGroup")
    return 2;
  return 1;
}

int report_error(const Options& o, int code, const std::string& kind, const std::string& reason,
                 const std::string& msg) {
  if (o.json_errors) {
    json e = {{"error", kind}, {"message", msg}, {"exit_code", code}};
    if (!reason.empty()) e["reason"] = reason;
    std::cerr << e.dump() << "\n";
  } else {
    std::cerr << "valchain: " << kind << (reason.empty() ? "" : " (" + reason + ")") << ": "
              << msg << "\n";
  }
  return code;
}

} // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact augmentation chains of valuations on K[T]"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--spec", o.spec, "Chain spec JSON (or enlargement JSON for 'enlarge')");
  app.add_flag("--json-errors", o.json_errors, "Write errors to stderr as JSON");
  app.add_option("--seed", o.seed, "Seed for randomized falsifiers (default 0x5eed = 24301)");
  app.add_option("--approx", o.approx, "Also print decimals with this many digits");

  std::string poly, mode = "log", content_path;
  int trials = 200;
  EnlargeArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate the chain's semi-valuation on a polynomial");
  eval->add_option("poly", poly, "Polynomial text in T")->required();
  auto* step = app.add_subcommand("step", "Step of the chain");
  auto* diff = app.add_subcommand("different", "Different and log different");
  auto* disc = app.add_subcommand("discrepancy", "Discrepancy of dT (linear) or dlog(phi0) (log)");
  disc->add_option("--mode", mode, "linear | log")->check(CLI::IsMember({"linear", "log"}));
  auto* kahler = app.add_subcommand("kahler", "Kahler valuation of dT");
  auto* abslog = app.add_subcommand("abslogdiff", "Absolute log different");
  auto* cont = app.add_subcommand("content", "Content of a presented module");
  cont->add_option("matrix", content_path, "Matrix JSON {base, matrix}");
  auto* enl = app.add_subcommand("enlarge", "Presentation stages of an enlargement");
  enl->add_option("--group", ea.group, "Comma-separated value group generators");
  enl->add_option("--vphi", ea.v_phi, "v(phi)");
  enl->add_option("--mu", ea.mu, "Augmented radius mu");
  enl->add_option("--stages", ea.stages, "Number of stages");
  auto* dot = app.add_subcommand("export-dot", "DOT diagram of the chain");
  auto* val = app.add_subcommand("validate", "Validate a chain spec");
  val->add_option("--trials", trials, "Falsifier trials per key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval) return run_eval(o, poly);
    if (*step) return run_step(o);
    if (*diff) return run_different(o);
    if (*disc) return run_discrepancy(o, mode);
    if (*kahler) return run_kahler(o);
    if (*abslog) return run_abslogdiff(o);
    if (*cont) return run_content(o, content_path);
    if (*enl) return run_enlarge(o, ea);
    if (*dot) return run_export_dot(o);
    if (*val) return run_validate(o, trials);
  } catch (const InvalidChain& e) {
    return report_error(o, 2, e.code(), e.reason(), e.what());
  } catch (const Error& e) {
    return report_error(o, exit_code_for(e), e.code(), "", e.what());
  } catch (const json::exception& e) {
    return report_error(o, 2, "ParseError", "", e.what());
  } catch (const std::exception& e) {
    return report_error(o, 1, "Error", "", e.what());
  }
  return 1;
}
