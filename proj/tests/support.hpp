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

// Shared test utilities: seeded generators and small independent oracles
// that the engine under test is checked against. Everything here is written
// against truth tables, plain matrices or raw loops on purpose; none of it
// reuses the algorithms it is meant to check.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "fuzzydd/dense_relation.hpp"
#include "fuzzydd/fuzzy_relation.hpp"
#include "fuzzydd/image.hpp"
#include "fuzzydd/node_table.hpp"

namespace testsupport {

using namespace fuzzydd;

// ---- randomness ----------------------------------------------------------

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  std::mt19937_64 gen;

  std::uint32_t below(std::uint32_t bound) {  // [0, bound)
    return std::uniform_int_distribution<std::uint32_t>(0, bound - 1)(gen);
  }
  std::uint32_t between(std::uint32_t lo, std::uint32_t hi) {  // [lo, hi]
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(gen);
  }
  double unit() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
  }
  bool chance(double p) { return unit() < p; }
};

// ---- truth tables ---------------------------------------------------------

// Truth tables index elements the way diagrams do: element e assigns bit
// v-1-t of e to level t (most significant bit first).
inline std::vector<std::uint16_t> eval_all(const NodeTable& table,
                                           NodeHandle f, std::uint32_t v) {
  std::vector<std::uint16_t> out;
  out.reserve(std::size_t{1} << v);
  std::array<bool, 64> bits{};
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << v); ++e) {
    for (std::uint32_t t = 0; t < v; ++t) bits[t] = (e >> (v - 1 - t)) & 1;
    out.push_back(
        table.eval(f, std::span<const bool>(bits.data(), v)).raw());
  }
  return out;
}

inline std::vector<std::uint16_t> random_truth_table(Rng& rng, std::uint32_t v,
                                                     std::uint16_t scale,
                                                     std::uint32_t palette) {
  // Small palettes exercise sharing; full palettes exercise width.
  std::vector<std::uint16_t> values;
  for (std::uint32_t x = 0; x < palette; ++x)
    values.push_back(static_cast<std::uint16_t>(rng.below(scale + 1)));
  std::vector<std::uint16_t> tt(std::size_t{1} << v);
  for (auto& q : tt) q = values[rng.below(palette)];
  return tt;
}

// Construction order A: divide and conquer over the truth table.
inline NodeHandle build_by_halving(NodeTable& table,
                                   std::span<const std::uint16_t> tt,
                                   std::uint32_t level, std::uint32_t v) {
  if (level == v) return table.terminal(MembershipValue(tt[0]));
  const std::size_t half = tt.size() / 2;
  const NodeHandle lo = build_by_halving(table, tt.first(half), level + 1, v);
  const NodeHandle hi = build_by_halving(table, tt.subspan(half), level + 1, v);
  return table.make_node(level, lo, hi);
}

// Construction order B: pointwise max over single-element paths, visited in
// a shuffled order.
inline NodeHandle build_by_path_union(NodeTable& table,
                                      std::span<const std::uint16_t> tt,
                                      std::uint32_t v, Rng& rng) {
  const NodeHandle zero = table.terminal(MembershipValue::zero());
  std::vector<std::uint64_t> elements;
  for (std::uint64_t e = 0; e < tt.size(); ++e)
    if (tt[e] != 0) elements.push_back(e);
  std::shuffle(elements.begin(), elements.end(), rng.gen);

  NodeHandle root = zero;
  for (const std::uint64_t e : elements) {
    NodeHandle path = table.terminal(MembershipValue(tt[e]));
    for (std::uint32_t t = v; t-- > 0;) {
      const bool bit = (e >> (v - 1 - t)) & 1;
      path = bit ? table.make_node(t, zero, path)
                 : table.make_node(t, path, zero);
    }
    root = table.apply(root, path, ApplyOp::Max);
  }
  return root;
}

// Reduction census: the canonical diagram of a function has, per level,
// one node for each distinct subfunction (restriction of the levels above)
// that still depends on that level. Computed straight off the truth table.
inline std::size_t canonical_size_oracle(std::span<const std::uint16_t> tt,
                                         std::uint32_t v) {
  std::size_t count = 0;
  for (std::uint32_t t = 0; t < v; ++t) {
    const std::size_t len = std::size_t{1} << (v - t);
    std::set<std::vector<std::uint16_t>> dependent;
    for (std::size_t start = 0; start < tt.size(); start += len) {
      const auto chunk = tt.subspan(start, len);
      const auto lo = chunk.first(len / 2);
      const auto hi = chunk.subspan(len / 2);
      if (!std::equal(lo.begin(), lo.end(), hi.begin()))
        dependent.emplace(chunk.begin(), chunk.end());
    }
    count += dependent.size();
  }
  return count;
}

// ---- canonical-form checking ----------------------------------------------

// Walks a diagram through the public structure accessors and verifies the
// three canonical-form rules. Independent of the table's own bookkeeping.
inline bool diagram_is_canonical(const NodeTable& table, NodeHandle root,
                                 std::string* why = nullptr) {
  const auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  if (root.is_terminal()) return true;

  std::set<std::uint32_t> seen{root.index()};
  std::vector<NodeHandle> stack{root};
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> triples;
  while (!stack.empty()) {
    const NodeHandle h = stack.back();
    stack.pop_back();
    const NodeHandle lo = table.low(h);
    const NodeHandle hi = table.high(h);
    if (lo == hi) return fail("node with identical children");
    if (table.level(lo) <= table.level(h) || table.level(hi) <= table.level(h))
      return fail("levels do not strictly increase");
    if (!triples.emplace(table.level(h), lo.bits(), hi.bits()).second)
      return fail("duplicate (level, low, high) triple");
    for (const NodeHandle child : {lo, hi}) {
      if (child.is_internal() && seen.insert(child.index()).second)
        stack.push_back(child);
    }
  }
  return true;
}

// Reference node count: plain DFS over the structure accessors.
inline std::size_t count_nodes_reference(const NodeTable& table,
                                         NodeHandle root) {
  if (root.is_terminal()) return 0;
  std::set<std::uint32_t> seen{root.index()};
  std::vector<NodeHandle> stack{root};
  while (!stack.empty()) {
    const NodeHandle h = stack.back();
    stack.pop_back();
    for (const NodeHandle child : {table.low(h), table.high(h)}) {
      if (child.is_internal() && seen.insert(child.index()).second)
        stack.push_back(child);
    }
  }
  return seen.size();
}

// ---- relations -------------------------------------------------------------

inline DenseRelation random_dense(Rng& rng, std::uint32_t n, Precision p,
                                  double density, bool reflexive,
                                  bool symmetric) {
  DenseRelation r(n, p);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = symmetric ? i : 0; j < n; ++j) {
      if (rng.chance(density)) {
        const MembershipValue v(
            static_cast<std::uint16_t>(rng.between(1, p.scale())));
        r.set(i, j, v);
        if (symmetric) r.set(j, i, v);
      }
    }
  }
  if (reflexive)
    for (std::uint32_t i = 0; i < n; ++i)
      r.set(i, i, MembershipValue::one(p));
  return r;
}

// Composition oracle: the definition, one cell at a time, with its own loop
// nest (never the library kernel).
inline DenseRelation compose_reference(const DenseRelation& a,
                                       const DenseRelation& b) {
  const std::uint32_t n = a.size();
  DenseRelation out(n, a.precision());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      std::uint16_t best = 0;
      for (std::uint32_t c = 0; c < n; ++c)
        best = std::max(best, std::min(a.get(i, c).raw(), b.get(c, j).raw()));
      out.set(i, j, MembershipValue(best));
    }
  }
  return out;
}

inline bool is_transitive(const DenseRelation& r) {
  const std::uint32_t n = r.size();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t c = 0; c < n; ++c)
        if (std::min(r.get(i, c).raw(), r.get(c, j).raw()) > r.get(i, j).raw())
          return false;
  return true;
}

// ---- images ----------------------------------------------------------------

inline Image random_image(Rng& rng, std::uint32_t w, std::uint32_t h,
                          std::uint32_t palette) {
  std::vector<Pixel> colors;
  for (std::uint32_t c = 0; c < palette; ++c)
    colors.push_back(Pixel{static_cast<std::uint8_t>(rng.below(256)),
                           static_cast<std::uint8_t>(rng.below(256)),
                           static_cast<std::uint8_t>(rng.below(256))});
  Image img(w, h);
  for (std::uint32_t i = 0; i < w * h; ++i)
    img.set_pixel(i, colors[rng.below(palette)]);
  return img;
}

inline Image random_gray_image(Rng& rng, std::uint32_t w, std::uint32_t h,
                               std::uint32_t palette) {
  std::vector<std::uint8_t> grays;
  for (std::uint32_t c = 0; c < palette; ++c)
    grays.push_back(static_cast<std::uint8_t>(rng.below(256)));
  Image img(w, h);
  for (std::uint32_t i = 0; i < w * h; ++i) {
    const std::uint8_t g = grays[rng.below(palette)];
    img.set_pixel(i, Pixel{g, g, g});
  }
  return img;
}

inline std::string encode_p6(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  for (std::uint32_t i = 0; i < img.pixel_count(); ++i) {
    const Pixel p = img.pixel(i);
    out.push_back(static_cast<char>(p.r));
    out.push_back(static_cast<char>(p.g));
    out.push_back(static_cast<char>(p.b));
  }
  return out;
}

inline std::string encode_p3(const Image& img) {
  std::string out = "P3\n" + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  for (std::uint32_t i = 0; i < img.pixel_count(); ++i) {
    const Pixel p = img.pixel(i);
    out += std::to_string(p.r) + " " + std::to_string(p.g) + " " +
           std::to_string(p.b) + "\n";
  }
  return out;
}

// Grayscale encoders expect r == g == b.
inline std::string encode_p5(const Image& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  for (std::uint32_t i = 0; i < img.pixel_count(); ++i)
    out.push_back(static_cast<char>(img.pixel(i).r));
  return out;
}

inline std::string encode_p2(const Image& img) {
  std::string out = "P2\n" + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  for (std::uint32_t i = 0; i < img.pixel_count(); ++i)
    out += std::to_string(img.pixel(i).r) + "\n";
  return out;
}

inline Image decode(const std::string& bytes) {
  return load_image(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()));
}

inline bool images_equal(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  for (std::uint32_t i = 0; i < a.pixel_count(); ++i)
    if (!(a.pixel(i) == b.pixel(i))) return false;
  return true;
}

}  // namespace testsupport
