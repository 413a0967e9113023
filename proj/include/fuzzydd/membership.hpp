/*
 * Copyright 2026 The fuzzydd authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "fuzzydd/errors.hpp"

namespace fuzzydd {

/// Decimal precision of membership grades: grades are multiples of 10^-p
/// for p in {1, 2, 3}, giving 10^p + 1 representable values in [0, 1].
class Precision {
 public:
  explicit Precision(int digits) : digits_(digits) {
    if (digits < 1 || digits > 3)
      throw domain_error("precision must be 1, 2 or 3 fractional digits");
  }

  int digits() const noexcept { return digits_; }

  /// 10^p, the denominator of every grade at this precision.
  std::uint16_t scale() const noexcept {
    std::uint16_t s = 1;
    for (int i = 0; i < digits_; ++i) s = static_cast<std::uint16_t>(s * 10);
    return s;
  }

  friend bool operator==(Precision, Precision) = default;

 private:
  int digits_;
};

/// A fuzzy membership grade q/10^p stored as the raw numerator q.
/// The precision giving q meaning travels with the owning table, set or
/// relation; grades never hold floating point.
class MembershipValue {
 public:
  constexpr MembershipValue() = default;  // zero

  /// Wraps a raw numerator. Range against a precision is enforced where a
  /// precision is in scope (tables, relations, parsers); prefer from_raw
  /// when one is at hand.
  explicit constexpr MembershipValue(std::uint16_t q) : q_(q) {}

  static MembershipValue from_raw(std::uint32_t q, Precision p) {
    if (q > p.scale())
      throw domain_error("grade numerator " + std::to_string(q) +
                         " exceeds scale " + std::to_string(p.scale()));
    return MembershipValue(static_cast<std::uint16_t>(q));
  }

  static constexpr MembershipValue zero() { return MembershipValue(); }
  static MembershipValue one(Precision p) { return MembershipValue(p.scale()); }

  constexpr std::uint16_t raw() const noexcept { return q_; }

  friend constexpr auto operator<=>(MembershipValue, MembershipValue) = default;

 private:
  std::uint16_t q_ = 0;
};

constexpr MembershipValue mv_max(MembershipValue a, MembershipValue b) {
  return a < b ? b : a;
}

constexpr MembershipValue mv_min(MembershipValue a, MembershipValue b) {
  return b < a ? b : a;
}

/// Quantizes x in [0, 1] to the nearest grade, rounding halves away from
/// zero. Rejects values outside [0, 1] (including NaN).
MembershipValue quantize(double x, Precision p);

/// The real number q/10^p.
double to_real(MembershipValue v, Precision p);

/// Decimal rendering with exactly p fractional digits ("0.30" at p=2).
std::string to_decimal_string(MembershipValue v, Precision p);

}  // namespace fuzzydd
