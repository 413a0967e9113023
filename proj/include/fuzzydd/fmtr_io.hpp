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
#include <string>
#include <vector>

#include "fuzzydd/dense_relation.hpp"
#include "fuzzydd/fuzzy_relation.hpp"

namespace fuzzydd {

/// Text format for fuzzy relations.
///
///   FMTR 1 <n> <p>
///   <i> <j> <q>
///   ...
///
/// Header: format name, format version, domain size n >= 1, precision p.
/// One line per nonzero cell with the raw numerator 1 <= q <= 10^p.
/// Writers emit cells row-major ascending, so equal relations serialize to
/// identical bytes; the reader accepts any order, skips blank lines, and
/// rejects duplicate cells. Errors carry 1-based line numbers.
struct FmtrData {
  std::uint32_t n;
  Precision precision;
  std::vector<RelationEntry> entries;  // row-major ascending
};

FmtrData read_fmtr(std::istream& in);
FmtrData read_fmtr_file(const std::string& path);

void write_fmtr(std::ostream& out, const FuzzyRelation& r);
void write_fmtr(std::ostream& out, const DenseRelation& r);
void write_fmtr_file(const std::string& path, const FuzzyRelation& r);
void write_fmtr_file(const std::string& path, const DenseRelation& r);

DenseRelation to_dense(const FmtrData& data);

/// Builds the relation in `table`, whose precision must match the file's.
FuzzyRelation to_relation(NodeTable& table, const FmtrData& data);

}  // namespace fuzzydd
