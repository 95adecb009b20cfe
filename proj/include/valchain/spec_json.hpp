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

#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"

#include "valchain/chain.hpp"
#include "valchain/errors.hpp"
#include "valchain/field.hpp"
#include "valchain/modcontent.hpp"

namespace valchain {

using json = nlohmann::json;
using AnyChain = std::variant<Chain<PAdicRationals>, Chain<LaurentRationalFunctions>>;

namespace detail {

// Strings are taken verbatim; bare JSON integers are accepted as text.
inline std::string text_at(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  const json& x = j.at(key);
  if (x.is_string()) return x.get<std::string>();
  if (x.is_number_integer()) return x.dump();
  throw ParseError(where + "." + key + ": expected a string");
}

template <class Fn>
auto annotate(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InvalidChain&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline Value value_at(const json& j, const std::string& key, const std::string& where) {
  std::string s = text_at(j, key, where);
  return annotate(where + "." + key, [&] { return Value::parse(s); });
}

template <class F>
Poly<F> poly_at(const F& f, const json& j, const std::string& key, const std::string& where) {
  std::string s = text_at(j, key, where);
  return annotate(where + "." + key, [&] { return parse_poly(f, s); });
}

template <class F>
FamilyPrefix<F> family_at(const F& f, const json& rec, const std::string& where) {
  FamilyPrefix<F> fam;
  if (!rec.contains("family") || !rec.at("family").is_array())
    throw ParseError(where + ": missing array 'family'");
  const json& arr = rec.at("family");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string w = where + ".family[" + std::to_string(i) + "]";
    fam.pairs.emplace_back(poly_at(f, arr[i], "psi", w), value_at(arr[i], "gamma", w));
  }
  fam.declared_gamma_limit = value_at(rec, "family_gamma_limit", where);
  return fam;
}

inline json family_json(const auto& fam) {
  json arr = json::array();
  for (std::size_t i = 0; i < fam.size(); ++i)
    arr.push_back({{"psi", fam.psi(i).str()}, {"gamma", fam.gamma(i).str()}});
  return arr;
}

} // namespace detail

template <class F>
Chain<F> chain_from_json(const F& f, const json& doc) {
  using detail::text_at;
  const json& g = doc.contains("gauss") ? doc.at("gauss") : json::object();
  std::string ctext = g.contains("center") ? text_at(g, "center", "gauss") : "0";
  auto center = detail::annotate("gauss.center", [&] { return parse_element(f, ctext); });
  Value radius = g.contains("radius") ? detail::value_at(g, "radius", "gauss") : Value(0);
  Chain<F> c{GaussVal<F>{f, center, radius}, {}};
  if (doc.contains("augmentations")) {
    const json& augs = doc.at("augmentations");
    if (!augs.is_array()) throw ParseError("augmentations: expected an array");
    for (std::size_t i = 0; i < augs.size(); ++i) {
      std::string w = "augmentations[" + std::to_string(i) + "]";
      std::string kind = text_at(augs[i], "kind", w);
      if (kind == "ordinary") {
        c.augs.push_back(AugRecord<F>::ordinary(detail::poly_at(f, augs[i], "phi", w),
                                                detail::value_at(augs[i], "mu", w)));
      } else if (kind == "limit") {
        c.augs.push_back(AugRecord<F>::limit(detail::family_at(f, augs[i], w),
                                             detail::poly_at(f, augs[i], "phi", w),
                                             detail::value_at(augs[i], "mu", w)));
      } else if (kind == "stable_family") {
        c.augs.push_back(AugRecord<F>::stable_family(detail::family_at(f, augs[i], w)));
      } else {
        throw ParseError(w + ".kind: unknown record kind '" + kind + "'");
      }
    }
  }
  return c;
}

// The base descriptor {kind: "padic"|"laurent", p}.
inline std::pair<std::string, long> base_of(const json& doc) {
  if (!doc.is_object() || !doc.contains("base")) throw ParseError("missing field 'base'");
  const json& b = doc.at("base");
  std::string kind = detail::text_at(b, "kind", "base");
  if (!b.contains("p") || !b.at("p").is_number_integer())
    throw ParseError("base.p: expected an integer prime");
  long p = b.at("p").get<long>();
  if (!is_prime(p)) throw ParseError("base.p: " + std::to_string(p) + " is not prime");
  if (kind != "padic" && kind != "laurent")
    throw ParseError("base.kind: expected \"padic\" or \"laurent\"");
  return {kind, p};
}

inline AnyChain parse_chain_spec(const json& doc) {
  auto [kind, p] = base_of(doc);
  if (kind == "padic") return chain_from_json(PAdicRationals(p), doc);
  return chain_from_json(LaurentRationalFunctions(p), doc);
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
json chain_to_json(const Chain<F>& c) {
  const F& f = c.field();
  json doc;
  doc["base"] = {{"kind", f.kind()}, {"p", f.prime()}};
  doc["gauss"] = {{"center", f.str(c.seed.center)}, {"radius", c.seed.radius.str()}};
  json augs = json::array();
  for (const auto& r : c.augs) {
    json rec;
    switch (r.kind) {
    case AugRecord<F>::Kind::Ordinary:
      rec = {{"kind", "ordinary"}, {"phi", r.phi.str()}, {"mu", r.mu.str()}};
      break;
    case AugRecord<F>::Kind::Limit:
      rec = {{"kind", "limit"},
             {"family", detail::family_json(r.family)},
             {"family_gamma_limit", r.family.declared_gamma_limit.str()},
             {"phi", r.phi.str()},
             {"mu", r.mu.str()}};
      break;
    case AugRecord<F>::Kind::StableFamily:
      rec = {{"kind", "stable_family"},
             {"family", detail::family_json(r.family)},
             {"family_gamma_limit", r.family.declared_gamma_limit.str()}};
      break;
    }
    augs.push_back(rec);
  }
  doc["augmentations"] = augs;
  return doc;
}

inline json chain_to_json(const AnyChain& c) {
  return std::visit([](const auto& x) { return chain_to_json(x); }, c);
}

// One node per prefix; family members sit in a cluster feeding their record.
template <class F>
std::string chain_to_dot(const Chain<F>& c) {
  using K = typename AugRecord<F>::Kind;
  std::vector<Value> steps = record_steps(c);
  std::ostringstream os;
  os << "digraph chain {\n  rankdir=LR;\n  node [shape=box];\n";
  os << "  n0 [label=\"[v_K, " << c.seed.phi0().str() << ", " << c.seed.radius.str()
     << "]\"];\n";
  for (std::size_t i = 0; i < c.augs.size(); ++i) {
    const auto& r = c.augs[i];
    std::size_t id = i + 1;
    if (r.kind != K::Ordinary) {
      const auto& fam = r.family;
      os << "  subgraph cluster_family_" << id << " {\n    label=\"family "
         << id << " (limit " << fam.declared_gamma_limit.str() << ")\";\n    style=dashed;\n";
      for (std::size_t j = 0; j < fam.size(); ++j) {
        os << "    f" << id << "_" << j << " [label=\"" << fam.psi(j).str() << " : "
           << fam.gamma(j).str() << "\"];\n";
        if (j > 0) os << "    f" << id << "_" << j - 1 << " -> f" << id << "_" << j << ";\n";
      }
      os << "  }\n";
      if (fam.size() > 0)
        os << "  n" << i << " -> f" << id << "_0 [style=dashed];\n";
    }
    os << "  n" << id << " [label=\"";
    if (r.kind == K::StableFamily)
      os << "stable limit : " << r.family.declared_gamma_limit.str();
    else
      os << r.phi.str() << " : " << r.mu.str();
    os << "\"];\n";
    os << "  n" << i << " -> n" << id << " [label=\"" << steps[i].str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string chain_to_dot(const AnyChain& c) {
  return std::visit([](const auto& x) { return chain_to_dot(x); }, c);
}

// {base, matrix: [[entry, ...], ...]}: rows are generators, columns relations.
template <class F>
FpModulePresentation<F> presentation_from_json(const F& f, const json& doc) {
  if (!doc.contains("matrix") || !doc.at("matrix").is_array())
    throw ParseError("missing array 'matrix'");
  FpModulePresentation<F> m{f, 0, {}};
  const json& rows = doc.at("matrix");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw ParseError("matrix[" + std::to_string(i) + "]: expected an array");
    std::vector<typename F::Elem> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      std::string where = "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      const json& x = rows[i][j];
      std::string s = x.is_string() ? x.get<std::string>() : x.dump();
      row.push_back(detail::annotate(where, [&] { return parse_element(f, s); }));
    }
    m.entries.push_back(std::move(row));
  }
  m.rows = m.entries.size();
  m.check();
  return m;
}

} // namespace valchain
