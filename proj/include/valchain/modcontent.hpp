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

#include <vector>

#include "valchain/errors.hpp"
#include "valchain/value.hpp"

namespace valchain {

// Presentation of coker(K°^cols -> K°^rows): rows are generators, columns
// are relations.
template <class F>
struct FpModulePresentation {
  using Elem = typename F::Elem;
  F field;
  std::size_t rows = 0;
  std::vector<std::vector<Elem>> entries; // rows x cols

  std::size_t cols() const { return entries.empty() ? 0 : entries.front().size(); }

  void check() const {
    if (entries.size() != rows)
      throw InvalidPresentation("matrix has " + std::to_string(entries.size()) +
                                " rows, expected " + std::to_string(rows));
    for (const auto& row : entries) {
      if (row.size() != cols()) throw InvalidPresentation("ragged matrix");
      for (const auto& x : row)
        if (field.vk(x) < Value(0))
          throw InvalidPresentation("entry " + field.str(x) + " is not integral");
    }
  }
};

// Pivot on an entry of minimal valuation (ties: lowest row, then column),
// clear its row and column, repeat. Generators never hit contribute inf.
template <class F>
Value content(const FpModulePresentation<F>& m) {
  m.check();
  const F& f = m.field;
  auto a = m.entries;
  std::vector<bool> row_live(m.rows, true), col_live(m.cols(), true);
  Value total(0);
  std::size_t hit = 0;
  while (true) {
    std::size_t pr = m.rows, pc = 0;
    Value best = Value::inf();
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (!row_live[i]) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!col_live[j]) continue;
        Value v = f.vk(a[i][j]);
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == m.rows) break;
    total = total + best;
    ++hit;
    typename F::Elem piv = a[pr][pc];
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (!row_live[i] || i == pr || f.is_zero(a[i][pc])) continue;
      typename F::Elem k = a[i][pc] / piv;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (col_live[j]) a[i][j] = a[i][j] - k * a[pr][j];
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!col_live[j] || j == pc || f.is_zero(a[pr][j])) continue;
      typename F::Elem k = a[pr][j] / piv;
      for (std::size_t i = 0; i < m.rows; ++i)
        if (row_live[i]) a[i][j] = a[i][j] - k * a[i][pc];
    }
    row_live[pr] = false;
    col_live[pc] = false;
  }
  if (hit < m.rows) return Value::inf();
  return total;
}

template <class F>
FpModulePresentation<F> direct_sum(const FpModulePresentation<F>& x,
                                   const FpModulePresentation<F>& y) {
  const F& f = x.field;
  FpModulePresentation<F> s{f, x.rows + y.rows, {}};
  std::size_t cols = x.cols() + y.cols();
  for (std::size_t i = 0; i < x.rows; ++i) {
    auto row = x.entries[i];
    row.resize(cols, f.zero());
    s.entries.push_back(row);
  }
  for (std::size_t i = 0; i < y.rows; ++i) {
    std::vector<typename F::Elem> row(x.cols(), f.zero());
    row.insert(row.end(), y.entries[i].begin(), y.entries[i].end());
    s.entries.push_back(row);
  }
  return s;
}

template <class F>
Value content_additive_check(const FpModulePresentation<F>& x, const FpModulePresentation<F>& y) {
  return content(direct_sum(x, y));
}

} // namespace valchain
