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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fuzzydd/errors.hpp"
#include "fuzzydd/membership.hpp"

namespace fuzzydd {

/// Identity of one diagram node. Terminal handles embed the terminal's raw
/// grade; internal handles index the owning table's node arena. Two handles
/// are equal exactly when they denote the same node of the same table, so
/// semantic equality of diagrams is handle equality (the table keeps every
/// diagram canonical).
///
/// A handle is meaningful only to the table that produced it.
class NodeHandle {
 public:
  constexpr NodeHandle() = default;  // the zero terminal

  constexpr bool is_terminal() const noexcept {
    return (bits_ & kTerminalBit) != 0;
  }
  constexpr bool is_internal() const noexcept { return !is_terminal(); }

  /// Raw identity, for hashing and caches.
  constexpr std::uint32_t bits() const noexcept { return bits_; }

  /// Grade of a terminal handle. Meaningless for internal handles.
  constexpr MembershipValue terminal_value() const noexcept {
    return MembershipValue(static_cast<std::uint16_t>(bits_ & ~kTerminalBit));
  }

  /// Arena index of an internal handle. Meaningless for terminals.
  constexpr std::uint32_t index() const noexcept { return bits_; }

  static constexpr NodeHandle terminal(MembershipValue v) {
    return NodeHandle(kTerminalBit | v.raw());
  }
  static constexpr NodeHandle internal(std::uint32_t index) {
    return NodeHandle(index);
  }

  friend constexpr bool operator==(NodeHandle, NodeHandle) = default;

 private:
  explicit constexpr NodeHandle(std::uint32_t bits) : bits_(bits) {}

  static constexpr std::uint32_t kTerminalBit = 0x8000'0000u;

  std::uint32_t bits_ = kTerminalBit;
};

/// Pointwise operators understood by NodeTable::apply. Both are commutative,
/// associative, idempotent and selective (the result grade is always one of
/// the argument grades), so apply never invents terminal values.
enum class ApplyOp : std::uint8_t { Max, Min };

struct NodeTableOptions {
  /// Direct-mapped apply cache size in entries; rounded up to a power of
  /// two. Zero disables memoization entirely. The cache is lossy: a
  /// collision evicts, never corrupts.
  std::size_t apply_cache_entries = std::size_t{1} << 18;

  /// Hard cap on arena size; exceeding it raises capacity_error.
  std::uint32_t max_nodes = 0x7fff'ffffu;

  /// Initial unique-table bucket count; rounded up to a power of two.
  std::size_t initial_buckets = std::size_t{1} << 10;
};

/// Arena, unique table and apply cache for reduced ordered multi-terminal
/// decision diagrams over grades at one fixed precision.
///
/// Canonical form: variable levels strictly increase along every root-to-
/// terminal path, no node has low == high, and no two nodes share a
/// (level, low, high) triple. make_node enforces all three, so equal
/// functions always have equal handles.
///
/// Single-owner: a table and its handles are confined to one thread.
class NodeTable {
 public:
  explicit NodeTable(Precision precision, NodeTableOptions options = {});

  NodeTable(const NodeTable&) = delete;
  NodeTable& operator=(const NodeTable&) = delete;

  Precision precision() const noexcept { return precision_; }

  /// Level reported for terminal handles: below every real variable level.
  static constexpr std::uint32_t kTerminalLevel = 0xffff'ffffu;

  /// The canonical handle for grade v, registering v on first use.
  NodeHandle terminal(MembershipValue v);

  /// The canonical handle for "test `level`, else low / then high".
  /// Returns low when low == high (no redundant test is ever stored).
  /// Children must test strictly deeper levels; terminal children must be
  /// registered with this table.
  NodeHandle make_node(std::uint32_t level, NodeHandle low, NodeHandle high);

  /// Pointwise max/min of two diagrams. Memoized through the apply cache
  /// unless memoize is false; memoization is invisible in results.
  NodeHandle apply(NodeHandle f, NodeHandle g, ApplyOp op, bool memoize = true);

  /// Grade of f under an assignment indexed by level. The assignment must
  /// cover every level tested on the chosen path.
  MembershipValue eval(NodeHandle f, std::span<const bool> assignment) const;

  /// Splits f by the two levels `top` and `top + 1` into the four cofactors
  /// (00, 01, 10, 11). Requires every internal node reachable from f to sit
  /// at level >= top. Performs no allocation.
  std::array<NodeHandle, 4> quad_partition(NodeHandle f,
                                           std::uint32_t top) const;

  /// Number of distinct internal nodes reachable from f.
  std::size_t node_count(NodeHandle f) const;

  /// Distinct terminal grades reachable from f, ascending.
  std::vector<MembershipValue> terminal_values(NodeHandle f) const;

  /// Structure accessors. level() is kTerminalLevel for terminals; low and
  /// high require an internal handle.
  std::uint32_t level(NodeHandle h) const;
  NodeHandle low(NodeHandle h) const;
  NodeHandle high(NodeHandle h) const;

  /// Internal nodes currently allocated (live arena size).
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Grades registered via terminal(), ascending.
  std::vector<MembershipValue> registered_terminals() const;

  /// Drops every node, registration and cached apply result. All previously
  /// issued handles become invalid.
  void reset();

  /// Graphviz dump of the diagram rooted at f, for debugging.
  void write_dot(std::ostream& out, NodeHandle f) const;

 private:
  struct Node {
    std::uint32_t level;
    NodeHandle low;
    NodeHandle high;
    std::uint32_t next;  // unique-table chain
  };

  struct ApplyCacheEntry {
    std::uint32_t a = kNil;
    std::uint32_t b = kNil;
    std::uint8_t op = 0;
    NodeHandle result;
  };

  static constexpr std::uint32_t kNil = 0xffff'ffffu;

  void validate(NodeHandle h) const;
  void rehash(std::size_t bucket_count);
  NodeHandle apply_rec(NodeHandle f, NodeHandle g, ApplyOp op, bool use_cache);

  Precision precision_;
  NodeTableOptions options_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> buckets_;  // power-of-two size
  std::vector<bool> registered_;        // by raw grade
  std::vector<ApplyCacheEntry> apply_cache_;
};

}  // namespace fuzzydd
