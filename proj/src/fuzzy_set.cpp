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

#include "fuzzydd/fuzzy_set.hpp"

#include <algorithm>
#include <array>
#include <ostream>

namespace fuzzydd {

void FuzzySet::check_var_count(std::uint32_t var_count) {
  if (var_count < 1 || var_count > 63)
    throw domain_error("universe must use between 1 and 63 variables");
}

FuzzySet FuzzySet::empty(NodeTable& table, std::uint32_t var_count) {
  check_var_count(var_count);
  return FuzzySet(table, table.terminal(MembershipValue::zero()), var_count);
}

FuzzySet FuzzySet::constant(NodeTable& table, std::uint32_t var_count,
                            MembershipValue v) {
  check_var_count(var_count);
  return FuzzySet(table, table.terminal(v), var_count);
}

FuzzySet FuzzySet::from_pairs(
    NodeTable& table,
    std::span<const std::pair<std::uint64_t, MembershipValue>> pairs,
    std::uint32_t var_count) {
  check_var_count(var_count);
  const std::uint64_t universe = std::uint64_t{1} << var_count;

  std::vector<std::uint64_t> elements;
  elements.reserve(pairs.size());
  for (const auto& [e, v] : pairs) {
    if (e >= universe)
      throw domain_error("element " + std::to_string(e) +
                         " outside universe of " + std::to_string(universe) +
                         " elements");
    (void)v;
    elements.push_back(e);
  }
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw usage_error("duplicate element in membership pairs");

  const NodeHandle zero = table.terminal(MembershipValue::zero());
  NodeHandle root = zero;
  for (const auto& [e, v] : pairs) {
    // Single-path diagram for e, merged in pointwise.
    NodeHandle path = table.terminal(v);
    for (std::uint32_t t = var_count; t-- > 0;) {
      const bool bit = (e >> (var_count - 1 - t)) & 1;
      path = bit ? table.make_node(t, zero, path)
                 : table.make_node(t, path, zero);
    }
    root = table.apply(root, path, ApplyOp::Max);
  }
  return FuzzySet(table, root, var_count);
}

MembershipValue FuzzySet::membership(std::uint64_t element) const {
  if (element >= (std::uint64_t{1} << var_count_))
    throw domain_error("element outside the universe");
  std::array<bool, 64> bits{};
  for (std::uint32_t t = 0; t < var_count_; ++t)
    bits[t] = (element >> (var_count_ - 1 - t)) & 1;
  return table_->eval(root_, std::span<const bool>(bits.data(), var_count_));
}

void FuzzySet::check_compatible(const FuzzySet& a, const FuzzySet& b) {
  if (a.table_ != b.table_)
    throw usage_error("set operands must share one node table");
  if (a.var_count_ != b.var_count_)
    throw usage_error("set operands must share one universe");
}

FuzzySet set_union(const FuzzySet& a, const FuzzySet& b) {
  FuzzySet::check_compatible(a, b);
  return FuzzySet(*a.table_, a.table_->apply(a.root_, b.root_, ApplyOp::Max),
                  a.var_count_);
}

FuzzySet set_intersection(const FuzzySet& a, const FuzzySet& b) {
  FuzzySet::check_compatible(a, b);
  return FuzzySet(*a.table_, a.table_->apply(a.root_, b.root_, ApplyOp::Min),
                  a.var_count_);
}

namespace {

void collect_nonzero(
    const NodeTable& table, NodeHandle h, std::uint32_t t,
    std::uint32_t var_count, std::uint64_t prefix,
    std::vector<std::pair<std::uint64_t, MembershipValue>>& out) {
  if (h == NodeHandle::terminal(MembershipValue::zero())) return;
  if (t == var_count) {
    out.emplace_back(prefix, h.terminal_value());
    return;
  }
  NodeHandle lo = h;
  NodeHandle hi = h;
  if (h.is_internal() && table.level(h) == t) {
    lo = table.low(h);
    hi = table.high(h);
  }
  collect_nonzero(table, lo, t + 1, var_count, prefix << 1, out);
  collect_nonzero(table, hi, t + 1, var_count, (prefix << 1) | 1, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, MembershipValue>>
FuzzySet::nonzero_members() const {
  std::vector<std::pair<std::uint64_t, MembershipValue>> out;
  collect_nonzero(*table_, root_, 0, var_count_, 0, out);
  return out;
}

void FuzzySet::write_listing(std::ostream& out) const {
  for (const auto& [e, v] : nonzero_members())
    out << e << ' ' << to_decimal_string(v, table_->precision()) << '\n';
}

}  // namespace fuzzydd
