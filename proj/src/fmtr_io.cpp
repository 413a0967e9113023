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

#include "fuzzydd/fmtr_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fuzzydd {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw parse_error("line " + std::to_string(line) + ": " + what, line);
}

bool next_content_line(std::istream& in, std::string& line,
                       std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

FmtrData read_fmtr(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!next_content_line(in, line, line_no))
    fail(1, "missing header 'FMTR 1 <n> <p>'");
  std::istringstream header(line);
  std::string magic, version;
  std::int64_t n = -1, p = -1;
  std::string extra;
  if (!(header >> magic >> version >> n >> p) || magic != "FMTR" ||
      (header >> extra))
    fail(line_no, "malformed header, want 'FMTR 1 <n> <p>'");
  if (version != "1") fail(line_no, "unsupported format version " + version);
  if (n < 1) fail(line_no, "domain size must be at least 1");
  if (p < 1 || p > 3) fail(line_no, "precision must be 1, 2 or 3");

  FmtrData data{static_cast<std::uint32_t>(n), Precision(static_cast<int>(p)),
                {}};
  const std::uint32_t scale = data.precision.scale();

  while (next_content_line(in, line, line_no)) {
    std::istringstream ls(line);
    std::int64_t i = -1, j = -1, q = -1;
    if (!(ls >> i >> j >> q) || (ls >> extra))
      fail(line_no, "malformed entry, want '<i> <j> <q>'");
    if (i < 0 || i >= n || j < 0 || j >= n)
      fail(line_no, "cell index outside domain of size " + std::to_string(n));
    if (q < 1 || q > scale)
      fail(line_no, "grade numerator must lie in [1, " +
                        std::to_string(scale) + "]");
    data.entries.push_back(RelationEntry{static_cast<std::uint32_t>(i),
                                         static_cast<std::uint32_t>(j),
                                         MembershipValue(static_cast<std::uint16_t>(q))});
  }

  // Any input order is accepted; the canonical order is established here.
  std::sort(data.entries.begin(), data.entries.end(),
            [](const RelationEntry& a, const RelationEntry& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  for (std::size_t x = 1; x < data.entries.size(); ++x)
    if (data.entries[x - 1].i == data.entries[x].i &&
        data.entries[x - 1].j == data.entries[x].j)
      throw parse_error("duplicate cell (" + std::to_string(data.entries[x].i) +
                            ", " + std::to_string(data.entries[x].j) + ")",
                        0);
  return data;
}

FmtrData read_fmtr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open relation file: " + path);
  return read_fmtr(in);
}

namespace {

void write_header(std::ostream& out, std::uint32_t n, Precision p) {
  out << "FMTR 1 " << n << ' ' << p.digits() << '\n';
}

}  // namespace

void write_fmtr(std::ostream& out, const FuzzyRelation& r) {
  write_header(out, r.domain_size(), r.precision());
  r.for_each_nonzero([&](std::uint32_t i, std::uint32_t j, MembershipValue v) {
    out << i << ' ' << j << ' ' << v.raw() << '\n';
  });
}

void write_fmtr(std::ostream& out, const DenseRelation& r) {
  write_header(out, r.size(), r.precision());
  for (std::uint32_t i = 0; i < r.size(); ++i)
    for (std::uint32_t j = 0; j < r.size(); ++j) {
      const std::uint16_t q = r.get(i, j).raw();
      if (q != 0) out << i << ' ' << j << ' ' << q << '\n';
    }
}

namespace {

template <typename Relation>
void write_file(const std::string& path, const Relation& r) {
  std::ofstream out(path, std::ios::binary);  // binary: exact bytes matter
  if (!out) throw error("cannot create relation file: " + path);
  write_fmtr(out, r);
  out.flush();
  if (!out) throw error("failed writing relation file: " + path);
}

}  // namespace

void write_fmtr_file(const std::string& path, const FuzzyRelation& r) {
  write_file(path, r);
}

void write_fmtr_file(const std::string& path, const DenseRelation& r) {
  write_file(path, r);
}

DenseRelation to_dense(const FmtrData& data) {
  DenseRelation r(data.n, data.precision);
  for (const RelationEntry& e : data.entries) r.set(e.i, e.j, e.value);
  return r;
}

FuzzyRelation to_relation(NodeTable& table, const FmtrData& data) {
  if (table.precision() != data.precision)
    throw usage_error("table precision differs from the file's");
  return FuzzyRelation::from_entries(table, data.n, data.entries);
}

}  // namespace fuzzydd
