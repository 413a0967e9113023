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

#include "fuzzydd/fuzzy_relation.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace fuzzydd {

namespace {

std::uint32_t var_pairs_for(std::uint32_t n) {
  std::uint32_t k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return std::max(k, 1u);
}

void check_domain_size(std::uint32_t n) {
  if (n == 0) throw domain_error("relation domain size must be at least 1");
  if (n > (1u << 30))
    throw domain_error("relation domain size exceeds 2^30");
}

/// ids[d] is the identity pattern on an aligned block of size 2^(k-d);
/// ids[k] is the 1 terminal.
std::vector<NodeHandle> identity_chain(NodeTable& table, std::uint32_t k) {
  const NodeHandle zero = table.terminal(MembershipValue::zero());
  std::vector<NodeHandle> ids(k + 1);
  ids[k] = table.terminal(MembershipValue::one(table.precision()));
  for (std::uint32_t d = k; d-- > 0;) {
    const NodeHandle sub = ids[d + 1];
    const NodeHandle lo = table.make_node(2 * d + 1, sub, zero);
    const NodeHandle hi = table.make_node(2 * d + 1, zero, sub);
    ids[d] = table.make_node(2 * d, lo, hi);
  }
  return ids;
}

/// Shared by the builders: assembles the block [i0, i0+2^(k-d)) x [j0, ...)
/// from a callback giving sub-blocks, with the identity padding outside the
/// logical n x n region supplied structurally.
struct BlockContext {
  NodeTable& table;
  std::uint32_t n;
  std::uint32_t k;
  NodeHandle zero;
  std::vector<NodeHandle> ids;
};

NodeHandle assemble(BlockContext& ctx, std::uint32_t d, NodeHandle c00,
                    NodeHandle c01, NodeHandle c10, NodeHandle c11) {
  const NodeHandle lo = ctx.table.make_node(2 * d + 1, c00, c01);
  const NodeHandle hi = ctx.table.make_node(2 * d + 1, c10, c11);
  return ctx.table.make_node(2 * d, lo, hi);
}

NodeHandle build_from_matrix(BlockContext& ctx, const DenseRelation& m,
                             std::uint32_t d, std::uint32_t i0,
                             std::uint32_t j0) {
  if (d == ctx.k) {
    if (i0 < ctx.n && j0 < ctx.n) return ctx.table.terminal(m.get(i0, j0));
    return i0 == j0 ? ctx.ids[ctx.k] : ctx.zero;
  }
  // Blocks are aligned, so one fully in the padding meets the diagonal
  // exactly when its corners agree.
  if (i0 >= ctx.n || j0 >= ctx.n) return i0 == j0 ? ctx.ids[d] : ctx.zero;

  const std::uint32_t h = 1u << (ctx.k - d - 1);
  return assemble(ctx, d, build_from_matrix(ctx, m, d + 1, i0, j0),
                  build_from_matrix(ctx, m, d + 1, i0, j0 + h),
                  build_from_matrix(ctx, m, d + 1, i0 + h, j0),
                  build_from_matrix(ctx, m, d + 1, i0 + h, j0 + h));
}

std::uint64_t morton_key(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  std::uint64_t key = 0;
  for (std::uint32_t t = 0; t < k; ++t) {
    key <<= 2;
    key |= static_cast<std::uint64_t>((i >> (k - 1 - t)) & 1u) << 1;
    key |= (j >> (k - 1 - t)) & 1u;
  }
  return key;
}

NodeHandle build_from_entries(BlockContext& ctx,
                              std::span<const RelationEntry> es,
                              std::uint32_t d, std::uint32_t i0,
                              std::uint32_t j0) {
  const std::uint32_t size = 1u << (ctx.k - d);
  if (es.empty()) {
    if (i0 != j0) return ctx.zero;
    if (i0 >= ctx.n) return ctx.ids[d];       // fully padded diagonal block
    if (i0 + size <= ctx.n) return ctx.zero;  // fully logical, no entries
    // The block straddles the padding boundary; recurse to lay down the
    // padded part of the diagonal only.
  } else if (d == ctx.k) {
    return ctx.table.terminal(es.front().value);
  }

  const std::uint32_t h = size / 2;
  // Entries are sorted in diagram traversal order, so each quadrant is one
  // contiguous span.
  const auto row_split = std::partition_point(
      es.begin(), es.end(), [&](const RelationEntry& e) { return e.i < i0 + h; });
  const auto col_split_lo = std::partition_point(
      es.begin(), row_split,
      [&](const RelationEntry& e) { return e.j < j0 + h; });
  const auto col_split_hi = std::partition_point(
      row_split, es.end(),
      [&](const RelationEntry& e) { return e.j < j0 + h; });

  return assemble(
      ctx, d,
      build_from_entries(ctx, {es.begin(), col_split_lo}, d + 1, i0, j0),
      build_from_entries(ctx, {col_split_lo, row_split}, d + 1, i0, j0 + h),
      build_from_entries(ctx, {row_split, col_split_hi}, d + 1, i0 + h, j0),
      build_from_entries(ctx, {col_split_hi, es.end()}, d + 1, i0 + h,
                         j0 + h));
}

}  // namespace

FuzzyRelation FuzzyRelation::identity(NodeTable& table, std::uint32_t n) {
  check_domain_size(n);
  const std::uint32_t k = var_pairs_for(n);
  auto ids = identity_chain(table, k);
  return FuzzyRelation(table, ids[0], n, k);
}

FuzzyRelation FuzzyRelation::from_matrix(NodeTable& table,
                                         const DenseRelation& m) {
  if (m.precision() != table.precision())
    throw usage_error("matrix precision differs from the table's");
  const std::uint32_t n = m.size();
  const std::uint32_t k = var_pairs_for(n);
  BlockContext ctx{table, n, k, table.terminal(MembershipValue::zero()),
                   identity_chain(table, k)};
  return FuzzyRelation(table, build_from_matrix(ctx, m, 0, 0, 0), n, k);
}

FuzzyRelation FuzzyRelation::from_entries(
    NodeTable& table, std::uint32_t n,
    std::span<const RelationEntry> entries) {
  check_domain_size(n);
  const std::uint32_t k = var_pairs_for(n);
  const std::uint16_t scale = table.precision().scale();

  std::vector<RelationEntry> sorted;
  sorted.reserve(entries.size());
  for (const RelationEntry& e : entries) {
    if (e.i >= n || e.j >= n)
      throw domain_error("entry (" + std::to_string(e.i) + ", " +
                         std::to_string(e.j) + ") outside domain of size " +
                         std::to_string(n));
    if (e.value.raw() > scale)
      throw domain_error("entry grade exceeds the table's precision scale");
    if (e.value.raw() != 0) sorted.push_back(e);  // zero is the default
  }
  std::sort(sorted.begin(), sorted.end(),
            [k](const RelationEntry& a, const RelationEntry& b) {
              return morton_key(a.i, a.j, k) < morton_key(b.i, b.j, k);
            });
  for (std::size_t x = 1; x < sorted.size(); ++x)
    if (sorted[x - 1].i == sorted[x].i && sorted[x - 1].j == sorted[x].j)
      throw usage_error("duplicate entry (" + std::to_string(sorted[x].i) +
                        ", " + std::to_string(sorted[x].j) + ")");

  BlockContext ctx{table, n, k, table.terminal(MembershipValue::zero()),
                   identity_chain(table, k)};
  return FuzzyRelation(table, build_from_entries(ctx, sorted, 0, 0, 0), n, k);
}

MembershipValue FuzzyRelation::get(std::uint32_t i, std::uint32_t j) const {
  if (i >= padded_size() || j >= padded_size())
    throw domain_error("relation index outside the padded domain");
  std::array<bool, 64> bits{};
  for (std::uint32_t t = 0; t < k_; ++t) {
    bits[2 * t] = (i >> (k_ - 1 - t)) & 1u;
    bits[2 * t + 1] = (j >> (k_ - 1 - t)) & 1u;
  }
  return table_->eval(root_, std::span<const bool>(bits.data(), 2 * k_));
}

namespace {

/// In-order walk of row i's column function; visits nonzero logical cells
/// with ascending j.
void emit_row(const NodeTable& table, NodeHandle h, std::uint32_t t,
              std::uint32_t k, std::uint32_t n, std::uint32_t i,
              std::uint32_t jprefix,
              const std::function<void(std::uint32_t, std::uint32_t,
                                       MembershipValue)>& fn) {
  if (h == NodeHandle::terminal(MembershipValue::zero())) return;
  const std::uint32_t j_first = jprefix << (k - t);
  if (j_first >= n) return;  // entirely padding columns
  if (t == k) {
    fn(i, jprefix, h.terminal_value());
    return;
  }
  NodeHandle hx = h;
  if (hx.is_internal() && table.level(hx) == 2 * t) {
    const bool bit = (i >> (k - 1 - t)) & 1u;
    hx = bit ? table.high(hx) : table.low(hx);
  }
  NodeHandle lo = hx;
  NodeHandle hi = hx;
  if (hx.is_internal() && table.level(hx) == 2 * t + 1) {
    lo = table.low(hx);
    hi = table.high(hx);
  }
  emit_row(table, lo, t + 1, k, n, i, jprefix << 1, fn);
  emit_row(table, hi, t + 1, k, n, i, (jprefix << 1) | 1, fn);
}

}  // namespace

void FuzzyRelation::for_each_nonzero(
    const std::function<void(std::uint32_t, std::uint32_t, MembershipValue)>&
        fn) const {
  for (std::uint32_t i = 0; i < n_; ++i)
    emit_row(*table_, root_, 0, k_, n_, i, 0, fn);
}

DenseRelation to_dense(const FuzzyRelation& r) {
  DenseRelation out(r.domain_size(), r.precision());
  r.for_each_nonzero([&](std::uint32_t i, std::uint32_t j, MembershipValue v) {
    out.set(i, j, v);
  });
  return out;
}

RelationStats relation_stats(const FuzzyRelation& r) {
  RelationStats stats;
  stats.nodes = r.table().node_count(r.root());
  stats.terminals = r.table().terminal_values(r.root()).size();
  stats.bytes = static_cast<std::uint64_t>(stats.nodes) * 20;
  return stats;
}

namespace {

struct ComposeKey {
  std::uint64_t ab;
  std::uint32_t depth;

  friend bool operator==(ComposeKey, ComposeKey) = default;
};

struct ComposeKeyHash {
  std::size_t operator()(ComposeKey key) const noexcept {
    std::uint64_t x = key.ab ^ (static_cast<std::uint64_t>(key.depth) << 1);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

using ComposeCache =
    std::unordered_map<ComposeKey, NodeHandle, ComposeKeyHash>;

/// Block-recursive max-min composition. `a` and `b` hold aligned blocks
/// whose variables all sit at levels >= 2 * depth; the result is the
/// max-min product of the two blocks.
NodeHandle mmc_rec(NodeTable& table, NodeHandle a, NodeHandle b,
                   std::uint32_t depth, NodeHandle zero, ComposeCache* cache) {
  // A zero block annihilates the whole product row/column.
  if (a == zero || b == zero) return zero;
  if (a.is_terminal() && b.is_terminal())
    return a.terminal_value() <= b.terminal_value() ? a : b;  // min

  const ComposeKey key{
      (static_cast<std::uint64_t>(a.bits()) << 32) | b.bits(), depth};
  if (cache) {
    const auto it = cache->find(key);
    if (it != cache->end()) return it->second;
  }

  const std::uint32_t top = 2 * depth;
  const auto ab = table.quad_partition(a, top);
  const auto bb = table.quad_partition(b, top);

  // Standard 2x2 block product, max playing addition and the recursive
  // composition playing multiplication.
  const auto cell = [&](NodeHandle x0, NodeHandle y0, NodeHandle x1,
                        NodeHandle y1) {
    const NodeHandle first = mmc_rec(table, x0, y0, depth + 1, zero, cache);
    const NodeHandle second = mmc_rec(table, x1, y1, depth + 1, zero, cache);
    return table.apply(first, second, ApplyOp::Max);
  };
  const NodeHandle c00 = cell(ab[0], bb[0], ab[1], bb[2]);
  const NodeHandle c01 = cell(ab[0], bb[1], ab[1], bb[3]);
  const NodeHandle c10 = cell(ab[2], bb[0], ab[3], bb[2]);
  const NodeHandle c11 = cell(ab[2], bb[1], ab[3], bb[3]);

  const NodeHandle lo = table.make_node(top + 1, c00, c01);
  const NodeHandle hi = table.make_node(top + 1, c10, c11);
  const NodeHandle result = table.make_node(top, lo, hi);
  if (cache) cache->emplace(key, result);
  return result;
}

}  // namespace

FuzzyRelation max_min_compose(const FuzzyRelation& a, const FuzzyRelation& b,
                              bool memoize) {
  if (a.table_ != b.table_)
    throw usage_error("composition operands must share one node table");
  if (a.n_ != b.n_)
    throw usage_error("composition operands must have equal domain size");

  NodeTable& table = *a.table_;
  const NodeHandle zero = table.terminal(MembershipValue::zero());
  ComposeCache cache;
  const NodeHandle root = mmc_rec(table, a.root_, b.root_, 0, zero,
                                  memoize ? &cache : nullptr);
  return FuzzyRelation(table, root, a.n_, a.k_);
}

FuzzyRelation transitive_closure(const FuzzyRelation& r, unsigned* squarings) {
  NodeTable& table = *r.table_;
  const FuzzyRelation id = FuzzyRelation::identity(table, r.n_);
  if (table.apply(r.root_, id.root_, ApplyOp::Min) != id.root_)
    throw precondition_error("transitive closure requires a reflexive input");

  // Repeated squaring doubles the reachable path length, so a fixpoint
  // arrives within k+1 squarings; one more means a bug somewhere.
  const unsigned cap = r.k_ + 2;
  FuzzyRelation res = r;
  unsigned count = 0;
  for (;;) {
    const FuzzyRelation next = max_min_compose(res, res);
    ++count;
    if (next.root() == res.root()) break;
    if (count >= cap)
      throw error("transitive closure failed to reach a fixpoint");
    res = next;
  }
  if (squarings != nullptr) *squarings = count;
  return res;
}

}  // namespace fuzzydd
