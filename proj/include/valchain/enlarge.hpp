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

#include <gmpxx.h>

#include "valchain/value.hpp"

namespace valchain {

enum class EnlargeCase { Aleph, Beth, Gimel, Daleth };
const char* case_name(EnlargeCase c);

struct EnlargementSpec {
  ValueGroup base_group = ValueGroup::integers();
  Value v_phi;
  Value mu;
  EnlargeCase kind = EnlargeCase::Aleph;
  // Aleph only: minimal m > 0 with m*mu in the group.
  std::optional<mpz_class> m;
};

// Throws InvalidRadius if mu < v_phi.
EnlargementSpec classify(const ValueGroup& group, const Value& v_phi, const Value& mu);

// One finitely presented piece of the enlargement. Constants are carried by
// their valuations only.
struct PresentationStage {
  std::string index;
  std::vector<std::pair<std::string, std::string>> index_values;
  std::vector<std::string> generators;
  std::vector<std::string> relations;
  Value jac_det_valuation;
};

std::vector<PresentationStage> stages(const EnlargementSpec& spec, std::size_t how_many);

// mu - v(phi) + inf Gamma_{>0} - inf <Gamma, mu>_{>0}
Value lim_dets_target(const EnlargementSpec& spec);

struct LimDetsReport {
  Value target;
  Value last;
  std::vector<Value> sequence;
  bool monotone = true;
  bool within_tolerance = true;
  bool pass = true;
  std::string detail;
};

// For Daleth the target is infinite and the check passes iff the last stage
// exceeds `finite_bound`.
LimDetsReport lim_dets_check(const EnlargementSpec& spec, std::size_t stages_count,
                             const Value& tol, const Value& finite_bound = Value(100));

// Convergents a_k / b_k of the continued fraction of x (k = 0..n-1);
// stops early when x is rational.
std::vector<std::pair<mpz_class, mpz_class>> convergents(const Value& x, std::size_t n);

} // namespace valchain
