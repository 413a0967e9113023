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

#include <limits>
#include <vector>

#include "doctest.h"

using namespace fuzzydd;

TEST_CASE("precision accepts one to three digits") {
  CHECK(Precision(1).scale() == 10);
  CHECK(Precision(2).scale() == 100);
  CHECK(Precision(3).scale() == 1000);
  CHECK_THROWS_AS(Precision(0), domain_error);
  CHECK_THROWS_AS(Precision(4), domain_error);
  CHECK_THROWS_AS(Precision(-1), domain_error);
}

TEST_CASE("quantize maps representable reals exactly") {
  for (int digits = 1; digits <= 3; ++digits) {
    const Precision p(digits);
    for (std::uint32_t q = 0; q <= p.scale(); ++q) {
      const MembershipValue v = MembershipValue::from_raw(q, p);
      CHECK(quantize(to_real(v, p), p) == v);
    }
  }
}

TEST_CASE("quantize rounds to the nearest grade, halves away from zero") {
  // 0.025 is representable at p=3 and becomes the integer 25.
  CHECK(quantize(0.025, Precision(3)).raw() == 25);
  // 0.05 sits exactly between grades at p=1 and must round up.
  CHECK(quantize(0.05, Precision(1)).raw() == 1);
  CHECK(quantize(0.14, Precision(1)).raw() == 1);
  CHECK(quantize(0.16, Precision(1)).raw() == 2);
  CHECK(quantize(0.0, Precision(2)).raw() == 0);
  CHECK(quantize(1.0, Precision(2)).raw() == 100);
  CHECK(quantize(0.999, Precision(1)).raw() == 10);
}

TEST_CASE("quantize rejects values outside the unit interval") {
  CHECK_THROWS_AS(quantize(-0.01, Precision(1)), domain_error);
  CHECK_THROWS_AS(quantize(1.01, Precision(1)), domain_error);
  CHECK_THROWS_AS(quantize(std::numeric_limits<double>::quiet_NaN(),
                           Precision(1)),
                  domain_error);
}

TEST_CASE("from_raw enforces the scale") {
  CHECK(MembershipValue::from_raw(10, Precision(1)).raw() == 10);
  CHECK_THROWS_AS(MembershipValue::from_raw(11, Precision(1)), domain_error);
  CHECK_THROWS_AS(MembershipValue::from_raw(1001, Precision(3)), domain_error);
}

TEST_CASE("decimal rendering always shows exactly p fractional digits") {
  CHECK(to_decimal_string(MembershipValue(3), Precision(1)) == "0.3");
  CHECK(to_decimal_string(MembershipValue(30), Precision(2)) == "0.30");
  CHECK(to_decimal_string(MembershipValue(25), Precision(3)) == "0.025");
  CHECK(to_decimal_string(MembershipValue(0), Precision(2)) == "0.00");
  CHECK(to_decimal_string(MembershipValue(10), Precision(1)) == "1.0");
  CHECK(to_decimal_string(MembershipValue(100), Precision(2)) == "1.00");
  CHECK(to_decimal_string(MembershipValue(1000), Precision(3)) == "1.000");
  CHECK(to_decimal_string(MembershipValue(7), Precision(3)) == "0.007");

  for (int digits = 1; digits <= 3; ++digits) {
    const Precision p(digits);
    for (std::uint32_t q = 0; q <= p.scale(); ++q) {
      const std::string s =
          to_decimal_string(MembershipValue::from_raw(q, p), p);
      CHECK(s.size() == 2 + static_cast<std::size_t>(digits));
      CHECK(s[1] == '.');
    }
  }
}

TEST_CASE("grades are totally ordered and max/min form a lattice") {
  const Precision p(1);
  std::vector<MembershipValue> all;
  for (std::uint32_t q = 0; q <= p.scale(); ++q)
    all.push_back(MembershipValue::from_raw(q, p));

  for (const MembershipValue a : all) {
    CHECK(mv_max(a, a) == a);
    CHECK(mv_min(a, a) == a);
    for (const MembershipValue b : all) {
      CHECK(mv_max(a, b) == mv_max(b, a));
      CHECK(mv_min(a, b) == mv_min(b, a));
      CHECK(mv_max(a, mv_min(a, b)) == a);  // absorption
      CHECK(mv_min(a, mv_max(a, b)) == a);
      for (const MembershipValue c : all) {
        CHECK(mv_max(mv_max(a, b), c) == mv_max(a, mv_max(b, c)));
        CHECK(mv_min(mv_min(a, b), c) == mv_min(a, mv_min(b, c)));
      }
    }
  }
}
