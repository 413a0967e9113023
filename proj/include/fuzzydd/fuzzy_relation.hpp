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
#include <functional>
#include <span>
#include <vector>

#include "fuzzydd/dense_relation.hpp"
#include "fuzzydd/node_table.hpp"

namespace fuzzydd {

/// One nonzero cell of a relation.
struct RelationEntry {
  std::uint32_t i;
  std::uint32_t j;
  MembershipValue value;
};

/// A binary fuzzy relation on {0, ..., n-1}^2, stored as a diagram over
/// 2k interleaved variables where k = ceil(log2 n) (at least 1). Level 2t
/// tests bit k-1-t of the row index, level 2t+1 the same bit of the column
/// index.
///
/// When n is not a power of two the matrix is embedded in the 2^k x 2^k
/// domain with identity padding: pad diagonal cells hold grade 1, all other
/// pad cells hold 0. Padding is invisible through get() and is preserved by
/// composition and closure, which therefore agree with the n x n truth on
/// the logical region.
class FuzzyRelation {
 public:
  /// The identity relation (diagonal 1, elsewhere 0).
  static FuzzyRelation identity(NodeTable& table, std::uint32_t n);

  /// Relation equal to a dense matrix. The matrix precision must match the
  /// table's.
  static FuzzyRelation from_matrix(NodeTable& table, const DenseRelation& m);

  /// Relation from its nonzero cells (any order, duplicates rejected,
  /// indices must be below n). Cost scales with the number of entries, not
  /// with n^2.
  static FuzzyRelation from_entries(NodeTable& table, std::uint32_t n,
                                    std::span<const RelationEntry> entries);

  /// Grade of cell (i, j); i and j range over the padded domain
  /// [0, 2^k), so tests can observe the padding too.
  MembershipValue get(std::uint32_t i, std::uint32_t j) const;

  /// Visits every nonzero cell of the logical n x n region in row-major
  /// ascending order. Cost scales with the visited cells plus pruned
  /// structure, not with the padded domain.
  void for_each_nonzero(
      const std::function<void(std::uint32_t, std::uint32_t, MembershipValue)>&
          fn) const;

  std::uint32_t domain_size() const noexcept { return n_; }    // n
  std::uint32_t var_pairs() const noexcept { return k_; }      // k
  std::uint32_t padded_size() const noexcept { return 1u << k_; }
  NodeHandle root() const noexcept { return root_; }
  NodeTable& table() const noexcept { return *table_; }
  Precision precision() const noexcept { return table_->precision(); }

 private:
  FuzzyRelation(NodeTable& table, NodeHandle root, std::uint32_t n,
                std::uint32_t k)
      : table_(&table), root_(root), n_(n), k_(k) {}

  NodeTable* table_;
  NodeHandle root_;
  std::uint32_t n_;
  std::uint32_t k_;

  friend FuzzyRelation max_min_compose(const FuzzyRelation&,
                                       const FuzzyRelation&, bool);
  friend FuzzyRelation transitive_closure(const FuzzyRelation&, unsigned*);
};

/// Max-min composition out(i,j) = max over c of min(a(i,c), b(c,j)),
/// computed block-recursively on the diagrams. Operands must share a table
/// and a logical size. `memoize` only controls the composition cache;
/// results are identical either way.
FuzzyRelation max_min_compose(const FuzzyRelation& a, const FuzzyRelation& b,
                              bool memoize = true);

/// Max-min transitive closure by repeated squaring to the fixpoint.
/// Requires a reflexive relation (diagonal all 1). If `squarings` is
/// non-null it receives the number of squarings performed, fixpoint test
/// included (an already transitive relation reports 1). The fixpoint is
/// reached within k+1 squarings for a reflexive input; k+2 without a
/// fixpoint raises an error.
FuzzyRelation transitive_closure(const FuzzyRelation& r,
                                 unsigned* squarings = nullptr);

/// Readback of the logical n x n region.
DenseRelation to_dense(const FuzzyRelation& r);

/// Size figures for reporting. bytes uses the diagram memory model of
/// twenty bytes per internal node; kilobytes are decimal (bytes / 1000).
struct RelationStats {
  std::size_t nodes = 0;
  std::size_t terminals = 0;
  std::uint64_t bytes = 0;

  std::uint64_t kilobytes() const noexcept { return bytes / 1000; }
};

RelationStats relation_stats(const FuzzyRelation& r);

}  // namespace fuzzydd
