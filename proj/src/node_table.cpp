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

#include "fuzzydd/node_table.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <set>
#include <unordered_set>

namespace fuzzydd {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

std::uint64_t hash_triple(std::uint32_t level, NodeHandle low,
                          NodeHandle high) {
  const std::uint64_t children =
      (static_cast<std::uint64_t>(low.bits()) << 32) | high.bits();
  return mix64(children ^ mix64(level));
}

std::size_t ceil_pow2(std::size_t x) {
  return std::bit_ceil(x == 0 ? std::size_t{1} : x);
}

}  // namespace

NodeTable::NodeTable(Precision precision, NodeTableOptions options)
    : precision_(precision), options_(options) {
  buckets_.assign(ceil_pow2(options_.initial_buckets), kNil);
  registered_.assign(static_cast<std::size_t>(precision_.scale()) + 1, false);
  if (options_.apply_cache_entries > 0)
    apply_cache_.resize(ceil_pow2(options_.apply_cache_entries));
}

NodeHandle NodeTable::terminal(MembershipValue v) {
  if (v.raw() > precision_.scale())
    throw domain_error("terminal grade " + std::to_string(v.raw()) +
                       " exceeds scale " + std::to_string(precision_.scale()));
  registered_[v.raw()] = true;
  return NodeHandle::terminal(v);
}

void NodeTable::validate(NodeHandle h) const {
  if (h.is_terminal()) {
    const std::uint32_t q = h.terminal_value().raw();
    if (q > precision_.scale() || !registered_[q])
      throw usage_error("terminal handle not registered with this table");
  } else if (h.index() >= nodes_.size()) {
    throw usage_error("internal handle outside this table's arena");
  }
}

NodeHandle NodeTable::make_node(std::uint32_t level, NodeHandle low,
                                NodeHandle high) {
  validate(low);
  validate(high);
  if (level >= kTerminalLevel)
    throw structure_error("node level out of range");
  if (this->level(low) <= level || this->level(high) <= level)
    throw structure_error("children must test strictly deeper levels");
  if (low == high) return low;  // redundant test, never stored

  const std::uint64_t h = hash_triple(level, low, high);
  std::size_t slot = h & (buckets_.size() - 1);
  for (std::uint32_t idx = buckets_[slot]; idx != kNil;
       idx = nodes_[idx].next) {
    const Node& nd = nodes_[idx];
    if (nd.level == level && nd.low == low && nd.high == high)
      return NodeHandle::internal(idx);
  }

  if (nodes_.size() >= options_.max_nodes)
    throw capacity_error("node arena reached its configured capacity of " +
                         std::to_string(options_.max_nodes) + " nodes");

  if (nodes_.size() + 1 > buckets_.size() - buckets_.size() / 4) {
    rehash(buckets_.size() * 2);
    slot = h & (buckets_.size() - 1);
  }

  const std::uint32_t idx = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(Node{level, low, high, buckets_[slot]});
  buckets_[slot] = idx;
  return NodeHandle::internal(idx);
}

void NodeTable::rehash(std::size_t bucket_count) {
  buckets_.assign(bucket_count, kNil);
  for (std::uint32_t idx = 0; idx < nodes_.size(); ++idx) {
    Node& nd = nodes_[idx];
    const std::size_t slot =
        hash_triple(nd.level, nd.low, nd.high) & (buckets_.size() - 1);
    nd.next = buckets_[slot];
    buckets_[slot] = idx;
  }
}

std::uint32_t NodeTable::level(NodeHandle h) const {
  if (h.is_terminal()) return kTerminalLevel;
  return nodes_[h.index()].level;
}

NodeHandle NodeTable::low(NodeHandle h) const {
  if (h.is_terminal()) throw usage_error("terminal handles have no children");
  return nodes_[h.index()].low;
}

NodeHandle NodeTable::high(NodeHandle h) const {
  if (h.is_terminal()) throw usage_error("terminal handles have no children");
  return nodes_[h.index()].high;
}

NodeHandle NodeTable::apply(NodeHandle f, NodeHandle g, ApplyOp op,
                            bool memoize) {
  validate(f);
  validate(g);
  return apply_rec(f, g, op, memoize && !apply_cache_.empty());
}

NodeHandle NodeTable::apply_rec(NodeHandle f, NodeHandle g, ApplyOp op,
                                bool use_cache) {
  if (f == g) return f;  // max and min are idempotent
  if (f.is_terminal() && g.is_terminal()) {
    const bool f_low = f.terminal_value() <= g.terminal_value();
    return (op == ApplyOp::Min) == f_low ? f : g;
  }
  // Absorbing or neutral terminal on either side ends the recursion early.
  const std::uint16_t top = precision_.scale();
  if (f.is_terminal()) {
    const std::uint16_t q = f.terminal_value().raw();
    if (op == ApplyOp::Max ? q == 0 : q == top) return g;
    if (op == ApplyOp::Max ? q == top : q == 0) return f;
  } else if (g.is_terminal()) {
    const std::uint16_t q = g.terminal_value().raw();
    if (op == ApplyOp::Max ? q == 0 : q == top) return f;
    if (op == ApplyOp::Max ? q == top : q == 0) return g;
  }

  // Both operators are commutative; normalizing the operand order doubles
  // the cache hit rate.
  NodeHandle a = f;
  NodeHandle b = g;
  if (b.bits() < a.bits()) std::swap(a, b);

  std::size_t slot = 0;
  if (use_cache) {
    slot = mix64((static_cast<std::uint64_t>(a.bits()) << 32) ^ b.bits() ^
                 (static_cast<std::uint64_t>(op) << 1)) &
           (apply_cache_.size() - 1);
    const ApplyCacheEntry& e = apply_cache_[slot];
    if (e.a == a.bits() && e.b == b.bits() &&
        e.op == static_cast<std::uint8_t>(op))
      return e.result;
  }

  const std::uint32_t la = level(a);
  const std::uint32_t lb = level(b);
  const std::uint32_t m = std::min(la, lb);
  NodeHandle a0 = a, a1 = a, b0 = b, b1 = b;
  if (la == m) {
    a0 = nodes_[a.index()].low;
    a1 = nodes_[a.index()].high;
  }
  if (lb == m) {
    b0 = nodes_[b.index()].low;
    b1 = nodes_[b.index()].high;
  }
  const NodeHandle r =
      make_node(m, apply_rec(a0, b0, op, use_cache),
                apply_rec(a1, b1, op, use_cache));
  if (use_cache)
    apply_cache_[slot] =
        ApplyCacheEntry{a.bits(), b.bits(), static_cast<std::uint8_t>(op), r};
  return r;
}

MembershipValue NodeTable::eval(NodeHandle f,
                                std::span<const bool> assignment) const {
  validate(f);
  NodeHandle h = f;
  while (h.is_internal()) {
    const Node& nd = nodes_[h.index()];
    if (nd.level >= assignment.size())
      throw usage_error("assignment does not cover level " +
                        std::to_string(nd.level));
    h = assignment[nd.level] ? nd.high : nd.low;
  }
  return h.terminal_value();
}

std::array<NodeHandle, 4> NodeTable::quad_partition(NodeHandle f,
                                                    std::uint32_t top) const {
  validate(f);
  if (top >= kTerminalLevel - 1)
    throw structure_error("partition level out of range");
  // Levels only grow along paths, so checking the root suffices.
  if (f.is_internal() && nodes_[f.index()].level < top)
    throw structure_error("diagram tests a level above the partition level");

  const auto split = [this](NodeHandle h, std::uint32_t lvl,
                            NodeHandle& lo, NodeHandle& hi) {
    if (h.is_internal() && nodes_[h.index()].level == lvl) {
      lo = nodes_[h.index()].low;
      hi = nodes_[h.index()].high;
    } else {
      lo = h;  // level elided: both cofactors coincide
      hi = h;
    }
  };

  NodeHandle f0, f1;
  split(f, top, f0, f1);
  std::array<NodeHandle, 4> out;
  split(f0, top + 1, out[0], out[1]);
  split(f1, top + 1, out[2], out[3]);
  return out;
}

std::size_t NodeTable::node_count(NodeHandle f) const {
  validate(f);
  if (f.is_terminal()) return 0;
  std::unordered_set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{f.index()};
  seen.insert(f.index());
  while (!stack.empty()) {
    const Node& nd = nodes_[stack.back()];
    stack.pop_back();
    for (NodeHandle child : {nd.low, nd.high}) {
      if (child.is_internal() && seen.insert(child.index()).second)
        stack.push_back(child.index());
    }
  }
  return seen.size();
}

std::vector<MembershipValue> NodeTable::terminal_values(NodeHandle f) const {
  validate(f);
  std::set<std::uint16_t> values;
  if (f.is_terminal()) {
    values.insert(f.terminal_value().raw());
  } else {
    std::unordered_set<std::uint32_t> seen{f.index()};
    std::vector<std::uint32_t> stack{f.index()};
    while (!stack.empty()) {
      const Node& nd = nodes_[stack.back()];
      stack.pop_back();
      for (NodeHandle child : {nd.low, nd.high}) {
        if (child.is_terminal())
          values.insert(child.terminal_value().raw());
        else if (seen.insert(child.index()).second)
          stack.push_back(child.index());
      }
    }
  }
  std::vector<MembershipValue> out;
  out.reserve(values.size());
  for (std::uint16_t q : values) out.emplace_back(q);
  return out;
}

std::vector<MembershipValue> NodeTable::registered_terminals() const {
  std::vector<MembershipValue> out;
  for (std::size_t q = 0; q < registered_.size(); ++q)
    if (registered_[q]) out.emplace_back(static_cast<std::uint16_t>(q));
  return out;
}

void NodeTable::reset() {
  nodes_.clear();
  buckets_.assign(ceil_pow2(options_.initial_buckets), kNil);
  registered_.assign(static_cast<std::size_t>(precision_.scale()) + 1, false);
  if (!apply_cache_.empty())
    apply_cache_.assign(apply_cache_.size(), ApplyCacheEntry{});
}

void NodeTable::write_dot(std::ostream& out, NodeHandle f) const {
  validate(f);
  std::vector<std::uint32_t> internals;
  std::set<std::uint16_t> terminals;
  if (f.is_terminal()) {
    terminals.insert(f.terminal_value().raw());
  } else {
    std::unordered_set<std::uint32_t> seen{f.index()};
    std::vector<std::uint32_t> stack{f.index()};
    while (!stack.empty()) {
      const std::uint32_t idx = stack.back();
      stack.pop_back();
      internals.push_back(idx);
      for (NodeHandle child : {nodes_[idx].low, nodes_[idx].high}) {
        if (child.is_terminal())
          terminals.insert(child.terminal_value().raw());
        else if (seen.insert(child.index()).second)
          stack.push_back(child.index());
      }
    }
  }
  std::sort(internals.begin(), internals.end());

  const auto name = [](NodeHandle h) {
    return h.is_terminal()
               ? "t" + std::to_string(h.terminal_value().raw())
               : "n" + std::to_string(h.index());
  };

  out << "digraph mtbdd {\n";
  for (std::uint16_t q : terminals)
    out << "  t" << q << " [shape=box, label=\""
        << to_decimal_string(MembershipValue(q), precision_) << "\"];\n";
  for (std::uint32_t idx : internals) {
    const Node& nd = nodes_[idx];
    out << "  n" << idx << " [shape=circle, label=\"x" << nd.level << "\"];\n";
    out << "  n" << idx << " -> " << name(nd.low) << " [style=dashed];\n";
    out << "  n" << idx << " -> " << name(nd.high) << ";\n";
  }
  out << "}\n";
}

}  // namespace fuzzydd
