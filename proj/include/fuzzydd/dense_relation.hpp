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
#include <vector>

#include "fuzzydd/errors.hpp"
#include "fuzzydd/membership.hpp"

namespace fuzzydd {

/// Row-major n x n matrix of grades. This is the reference representation:
/// its algorithms are deliberately plain loops whose correctness is obvious,
/// so the symbolic engine can be checked against it.
class DenseRelation {
 public:
  DenseRelation(std::uint32_t n, Precision p);  // all zero

  static DenseRelation identity(std::uint32_t n, Precision p);

  std::uint32_t size() const noexcept { return n_; }
  Precision precision() const noexcept { return precision_; }

  MembershipValue get(std::uint32_t i, std::uint32_t j) const;
  void set(std::uint32_t i, std::uint32_t j, MembershipValue v);

  bool is_reflexive() const;
  bool is_symmetric() const;

  friend bool operator==(const DenseRelation&, const DenseRelation&) = default;

  /// Raw cells for the kernels below. cells()[i * n + j] is the numerator
  /// of entry (i, j).
  const std::vector<std::uint16_t>& cells() const noexcept { return cells_; }

 private:
  void check_index(std::uint32_t i, std::uint32_t j) const;

  // The kernels below write cells directly; the checked set() would
  // dominate their inner loops.
  friend DenseRelation dense_mmc(const DenseRelation&, const DenseRelation&);
  friend DenseRelation floyd_warshall_closure(DenseRelation);

  std::uint32_t n_;
  Precision precision_;
  std::vector<std::uint16_t> cells_;
};

/// Max-min composition: out(i,j) = max over c of min(a(i,c), b(c,j)).
/// Operands must agree on size and precision.
DenseRelation dense_mmc(const DenseRelation& a, const DenseRelation& b);

/// Max-min transitive closure by the classic triple loop
///   for k: for i: for j: c[i,j] = max(c[i,j], min(c[i,k], c[k,j]))
/// Requires a reflexive input.
DenseRelation floyd_warshall_closure(DenseRelation r);

/// Bytes the array representation needs for an n x n relation: three bytes
/// per entry. n must be at least 1.
std::uint64_t dense_memory_bytes(std::uint64_t n);

}  // namespace fuzzydd
