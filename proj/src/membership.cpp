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

#include "fuzzydd/membership.hpp"

#include <cmath>

namespace fuzzydd {

MembershipValue quantize(double x, Precision p) {
  if (!(x >= 0.0 && x <= 1.0))  // also rejects NaN
    throw domain_error("grade to quantize must lie in [0, 1]");
  // llround rounds halves away from zero, which is the rounding rule here.
  const long long q = std::llround(x * p.scale());
  return MembershipValue(static_cast<std::uint16_t>(q));
}

double to_real(MembershipValue v, Precision p) {
  return static_cast<double>(v.raw()) / p.scale();
}

std::string to_decimal_string(MembershipValue v, Precision p) {
  const std::uint16_t scale = p.scale();
  const std::uint16_t whole = static_cast<std::uint16_t>(v.raw() / scale);
  std::uint16_t frac = static_cast<std::uint16_t>(v.raw() % scale);
  std::string s = std::to_string(whole);
  s += '.';
  std::string digits(static_cast<std::size_t>(p.digits()), '0');
  for (int i = p.digits() - 1; i >= 0 && frac != 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + frac % 10);
    frac = static_cast<std::uint16_t>(frac / 10);
  }
  s += digits;
  return s;
}

}  // namespace fuzzydd
