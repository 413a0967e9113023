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

#include "fuzzydd/dense_relation.hpp"

#include <algorithm>

namespace fuzzydd {

DenseRelation::DenseRelation(std::uint32_t n, Precision p)
    : n_(n), precision_(p) {
  if (n == 0) throw domain_error("relation domain size must be at least 1");
  cells_.assign(static_cast<std::size_t>(n) * n, 0);
}

DenseRelation DenseRelation::identity(std::uint32_t n, Precision p) {
  DenseRelation r(n, p);
  for (std::uint32_t i = 0; i < n; ++i)
    r.cells_[static_cast<std::size_t>(i) * n + i] = p.scale();
  return r;
}

void DenseRelation::check_index(std::uint32_t i, std::uint32_t j) const {
  if (i >= n_ || j >= n_)
    throw domain_error("relation index (" + std::to_string(i) + ", " +
                       std::to_string(j) + ") outside domain of size " +
                       std::to_string(n_));
}

MembershipValue DenseRelation::get(std::uint32_t i, std::uint32_t j) const {
  check_index(i, j);
  return MembershipValue(cells_[static_cast<std::size_t>(i) * n_ + j]);
}

void DenseRelation::set(std::uint32_t i, std::uint32_t j, MembershipValue v) {
  check_index(i, j);
  if (v.raw() > precision_.scale())
    throw domain_error("grade exceeds the relation's precision scale");
  cells_[static_cast<std::size_t>(i) * n_ + j] = v.raw();
}

bool DenseRelation::is_reflexive() const {
  for (std::uint32_t i = 0; i < n_; ++i)
    if (cells_[static_cast<std::size_t>(i) * n_ + i] != precision_.scale())
      return false;
  return true;
}

bool DenseRelation::is_symmetric() const {
  for (std::uint32_t i = 0; i < n_; ++i)
    for (std::uint32_t j = i + 1; j < n_; ++j)
      if (cells_[static_cast<std::size_t>(i) * n_ + j] !=
          cells_[static_cast<std::size_t>(j) * n_ + i])
        return false;
  return true;
}

DenseRelation dense_mmc(const DenseRelation& a, const DenseRelation& b) {
  if (a.size() != b.size())
    throw usage_error("composition operands must have equal size");
  if (a.precision() != b.precision())
    throw usage_error("composition operands must have equal precision");

  const std::size_t n = a.size();
  DenseRelation out(a.size(), a.precision());
  const std::uint16_t* pa = a.cells_.data();
  const std::uint16_t* pb = b.cells_.data();
  std::uint16_t* po = out.cells_.data();
  // (i, c, j) order keeps the inner loop on contiguous rows; the arithmetic
  // is the plain max-min definition.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint16_t via = pa[i * n + c];
      const std::uint16_t* row_c = pb + c * n;
      std::uint16_t* row_out = po + i * n;
      for (std::size_t j = 0; j < n; ++j)
        row_out[j] = std::max(row_out[j], std::min(via, row_c[j]));
    }
  }
  return out;
}

DenseRelation floyd_warshall_closure(DenseRelation r) {
  if (!r.is_reflexive())
    throw precondition_error("transitive closure requires a reflexive input");

  const std::size_t n = r.size();
  std::vector<std::uint16_t>& c = r.cells_;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint16_t via = c[i * n + k];
      const std::uint16_t* row_k = c.data() + k * n;
      std::uint16_t* row_i = c.data() + i * n;
      for (std::size_t j = 0; j < n; ++j)
        row_i[j] = std::max(row_i[j], std::min(via, row_k[j]));
    }
  }
  return r;
}

std::uint64_t dense_memory_bytes(std::uint64_t n) {
  if (n == 0) throw domain_error("relation domain size must be at least 1");
  return 3 * n * n;
}

}  // namespace fuzzydd
