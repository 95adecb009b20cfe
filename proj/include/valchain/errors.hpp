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

#include <stdexcept>
#include <string>

namespace valchain {

// Base of every error raised by the library. `code()` is a stable,
// machine-readable identifier used by the CLI.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define VALCHAIN_ERROR(Name)                                                   \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}               \
  };

VALCHAIN_ERROR(MixedIrrationals)
VALCHAIN_ERROR(NotInValueGroup)
VALCHAIN_ERROR(ConstantPhi)
VALCHAIN_ERROR(DivisionByZeroPoly)
VALCHAIN_ERROR(FamilyPrefixTooShort)
VALCHAIN_ERROR(MissingTargetValue)
VALCHAIN_ERROR(KernelPresent)
VALCHAIN_ERROR(InvalidRadius)
VALCHAIN_ERROR(UnsupportedIrrational)
VALCHAIN_ERROR(ParseError)
VALCHAIN_ERROR(InvalidPresentation)

#undef VALCHAIN_ERROR

// Structural problem with a chain; `reason()` is one of the documented
// reason codes (non_increasing_gamma, mu_below_v_phi, stable_family_not_last,
// seed_not_simple, family_degree_mismatch, family_not_monic, ...).
class InvalidChain : public Error {
public:
  InvalidChain(std::string reason, const std::string& msg)
      : Error("InvalidChain", msg), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

private:
  std::string reason_;
};

} // namespace valchain
