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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "fuzzydd/node_table.hpp"

namespace fuzzydd {

/// A fuzzy set over the universe {0, ..., 2^m - 1}, stored as a diagram over
/// m variables. Variable t (level t) tests bit m-1-t of the element, so the
/// most significant bit is tested first.
class FuzzySet {
 public:
  /// The empty set (constant zero).
  static FuzzySet empty(NodeTable& table, std::uint32_t var_count);

  /// Every element at grade v.
  static FuzzySet constant(NodeTable& table, std::uint32_t var_count,
                           MembershipValue v);

  /// Set from (element, grade) pairs; unlisted elements get zero.
  /// Duplicate elements are rejected, as are elements outside the universe.
  static FuzzySet from_pairs(
      NodeTable& table,
      std::span<const std::pair<std::uint64_t, MembershipValue>> pairs,
      std::uint32_t var_count);

  MembershipValue membership(std::uint64_t element) const;

  std::uint32_t var_count() const noexcept { return var_count_; }
  NodeHandle root() const noexcept { return root_; }
  NodeTable& table() const noexcept { return *table_; }

  /// (element, grade) for every element with nonzero grade, ascending.
  std::vector<std::pair<std::uint64_t, MembershipValue>> nonzero_members()
      const;

  /// One "element grade" line per nonzero member, ascending elements,
  /// grades rendered with exactly p fractional digits.
  void write_listing(std::ostream& out) const;

  friend FuzzySet set_union(const FuzzySet& a, const FuzzySet& b);
  friend FuzzySet set_intersection(const FuzzySet& a, const FuzzySet& b);

 private:
  FuzzySet(NodeTable& table, NodeHandle root, std::uint32_t var_count)
      : table_(&table), root_(root), var_count_(var_count) {}

  static void check_var_count(std::uint32_t var_count);
  static void check_compatible(const FuzzySet& a, const FuzzySet& b);

  NodeTable* table_;
  NodeHandle root_;
  std::uint32_t var_count_;
};

/// Pointwise max of grades. Operands must share a table and universe.
FuzzySet set_union(const FuzzySet& a, const FuzzySet& b);

/// Pointwise min of grades. Operands must share a table and universe.
FuzzySet set_intersection(const FuzzySet& a, const FuzzySet& b);

}  // namespace fuzzydd
