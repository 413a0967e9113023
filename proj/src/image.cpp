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

#include "fuzzydd/image.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

namespace fuzzydd {

Image::Image(std::uint32_t width, std::uint32_t height)
    : width_(width), height_(height) {
  if (width == 0 || height == 0)
    throw domain_error("image dimensions must be at least 1x1");
  pixels_.assign(static_cast<std::size_t>(width) * height, Pixel{});
}

namespace {

/// Byte-position-tracking scanner over a netpbm header. Whitespace and
/// '#' comments (to end of line) separate tokens.
struct Cursor {
  std::span<const unsigned char> data;
  std::size_t pos = 0;

  bool eof() const { return pos >= data.size(); }
  unsigned char peek() const { return data[pos]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(what + " at byte " + std::to_string(pos), pos);
  }

  void skip_separators() {
    while (!eof()) {
      const unsigned char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' ||
                 c == '\v' || c == '\f') {
        ++pos;
      } else {
        break;
      }
    }
  }

  std::uint32_t read_uint(const char* what) {
    skip_separators();
    if (eof() || peek() < '0' || peek() > '9')
      fail(std::string("expected ") + what);
    std::uint64_t value = 0;
    while (!eof() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      if (value > 0xffff'ffffull) fail(std::string(what) + " out of range");
      ++pos;
    }
    return static_cast<std::uint32_t>(value);
  }
};

}  // namespace

Image load_image(std::span<const unsigned char> bytes) {
  Cursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P')
    cur.fail("expected netpbm magic");
  const unsigned char kind = bytes[1];
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
    throw parse_error("unsupported netpbm variant (want P2, P3, P5 or P6)",
                      0);
  cur.pos = 2;

  const std::uint32_t width = cur.read_uint("width");
  const std::uint32_t height = cur.read_uint("height");
  if (width == 0 || height == 0) cur.fail("image dimensions must be positive");
  const std::uint32_t maxval = cur.read_uint("maxval");
  if (maxval != 255) cur.fail("only maxval 255 is supported");

  const bool color = kind == '3' || kind == '6';
  const bool binary = kind == '5' || kind == '6';
  const std::uint64_t samples =
      static_cast<std::uint64_t>(width) * height * (color ? 3 : 1);

  Image img(width, height);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.eof() || !(cur.peek() == ' ' || cur.peek() == '\t' ||
                       cur.peek() == '\r' || cur.peek() == '\n'))
      cur.fail("expected single whitespace before binary raster");
    ++cur.pos;
    if (bytes.size() - cur.pos < samples)
      throw parse_error("binary raster truncated at byte " +
                            std::to_string(bytes.size()),
                        bytes.size());
    const unsigned char* raw = bytes.data() + cur.pos;
    for (std::uint32_t idx = 0; idx < width * height; ++idx) {
      Pixel p;
      if (color) {
        p = Pixel{raw[3 * idx], raw[3 * idx + 1], raw[3 * idx + 2]};
      } else {
        p = Pixel{raw[idx], raw[idx], raw[idx]};
      }
      img.set_pixel(idx, p);
    }
  } else {
    std::vector<std::uint8_t> values;
    values.reserve(samples);
    for (std::uint64_t s = 0; s < samples; ++s) {
      const std::uint32_t v = cur.read_uint("sample");
      if (v > maxval) cur.fail("sample exceeds maxval");
      values.push_back(static_cast<std::uint8_t>(v));
    }
    for (std::uint32_t idx = 0; idx < width * height; ++idx) {
      if (color)
        img.set_pixel(idx, Pixel{values[3 * idx], values[3 * idx + 1],
                                 values[3 * idx + 2]});
      else
        img.set_pixel(idx, Pixel{values[idx], values[idx], values[idx]});
    }
  }
  return img;
}

Image load_image_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open image file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return load_image(std::span<const unsigned char>(bytes));
}

std::uint32_t color_diff(Pixel a, Pixel b) {
  const std::int32_t dr = static_cast<std::int32_t>(a.r) - b.r;
  const std::int32_t dg = static_cast<std::int32_t>(a.g) - b.g;
  const std::int32_t db = static_cast<std::int32_t>(a.b) - b.b;
  return static_cast<std::uint32_t>(dr * dr + dg * dg + db * db);
}

namespace {

std::uint32_t pack(Pixel p) {
  return (static_cast<std::uint32_t>(p.r) << 16) |
         (static_cast<std::uint32_t>(p.g) << 8) | p.b;
}

Pixel unpack(std::uint32_t c) {
  return Pixel{static_cast<std::uint8_t>(c >> 16),
               static_cast<std::uint8_t>(c >> 8),
               static_cast<std::uint8_t>(c)};
}

}  // namespace

SimilarityContext compute_delta(const Image& img, Precision p,
                                SimilarityNorm norm, Neighborhood nb) {
  // Delta only depends on the set of distinct colors, which is tiny
  // compared to the raster for typical inputs.
  std::unordered_set<std::uint32_t> colors;
  for (std::uint32_t idx = 0; idx < img.pixel_count(); ++idx)
    colors.insert(pack(img.pixel(idx)));

  std::vector<std::uint32_t> palette(colors.begin(), colors.end());
  std::uint32_t delta = 0;
  for (std::size_t x = 0; x < palette.size(); ++x)
    for (std::size_t y = x + 1; y < palette.size(); ++y)
      delta = std::max(delta,
                       color_diff(unpack(palette[x]), unpack(palette[y])));
  return SimilarityContext{delta, p, norm, nb};
}

double simil(Pixel a, Pixel b, const SimilarityContext& ctx) {
  const std::uint32_t diff = color_diff(a, b);
  if (diff == 0 || ctx.delta == 0) return 1.0;
  const double denom = ctx.norm == SimilarityNorm::Delta
                           ? static_cast<double>(ctx.delta)
                           : std::sqrt(static_cast<double>(ctx.delta));
  return 1.0 - std::sqrt(static_cast<double>(diff)) / denom;
}

namespace {

/// Per-pixel quantized similarities to the right/down (and, for the eight-
/// neighborhood, the two down diagonals). Everything build_affinity needs
/// to answer cell queries in O(1).
struct AffinityValues {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t n = 0;
  std::uint16_t top = 0;
  bool diagonals = false;
  std::vector<std::uint16_t> right;       // i <-> i+1
  std::vector<std::uint16_t> down;        // i <-> i+w
  std::vector<std::uint16_t> down_right;  // i <-> i+w+1
  std::vector<std::uint16_t> down_left;   // i <-> i+w-1
};

AffinityValues affinity_values(const Image& img, Precision p,
                               SimilarityNorm norm, Neighborhood nb) {
  const SimilarityContext ctx = compute_delta(img, p, norm, nb);
  const std::uint32_t w = img.width();
  const std::uint32_t h = img.height();
  const std::uint32_t n = w * h;

  AffinityValues av;
  av.width = w;
  av.height = h;
  av.n = n;
  av.top = p.scale();
  av.diagonals = nb == Neighborhood::Eight;
  av.right.assign(n, 0);
  av.down.assign(n, 0);
  if (av.diagonals) {
    av.down_right.assign(n, 0);
    av.down_left.assign(n, 0);
  }

  const auto grade = [&](std::uint32_t a, std::uint32_t b) {
    return quantize(simil(img.pixel(a), img.pixel(b), ctx), p).raw();
  };
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t col = i % w;
    const bool has_right = col + 1 < w;
    const bool has_down = i + w < n;
    if (has_right) av.right[i] = grade(i, i + 1);
    if (has_down) av.down[i] = grade(i, i + w);
    if (av.diagonals && has_down) {
      if (has_right) av.down_right[i] = grade(i, i + w + 1);
      if (col > 0) av.down_left[i] = grade(i, i + w - 1);
    }
  }
  return av;
}

}  // namespace

FuzzyRelation build_affinity(NodeTable& table, const Image& img,
                             SimilarityNorm norm, Neighborhood nb) {
  const AffinityValues av = affinity_values(img, table.precision(), norm, nb);

  std::vector<RelationEntry> entries;
  entries.reserve(static_cast<std::size_t>(av.n) * (av.diagonals ? 9 : 5));
  const auto add = [&](std::uint32_t i, std::uint32_t j, std::uint16_t q) {
    if (q != 0) {
      entries.push_back(RelationEntry{i, j, MembershipValue(q)});
      if (i != j) entries.push_back(RelationEntry{j, i, MembershipValue(q)});
    }
  };
  for (std::uint32_t i = 0; i < av.n; ++i) {
    add(i, i, av.top);
    const std::uint32_t col = i % av.width;
    if (col + 1 < av.width) add(i, i + 1, av.right[i]);
    if (i + av.width < av.n) add(i, i + av.width, av.down[i]);
    if (av.diagonals && i + av.width < av.n) {
      if (col + 1 < av.width) add(i, i + av.width + 1, av.down_right[i]);
      if (col > 0) add(i, i + av.width - 1, av.down_left[i]);
    }
  }
  return FuzzyRelation::from_entries(table, av.n, entries);
}

DenseRelation build_affinity_dense(const Image& img, Precision p,
                                   SimilarityNorm norm, Neighborhood nb) {
  const AffinityValues av = affinity_values(img, p, norm, nb);
  DenseRelation r(av.n, p);
  const auto add = [&](std::uint32_t i, std::uint32_t j, std::uint16_t q) {
    if (q != 0) {
      r.set(i, j, MembershipValue(q));
      r.set(j, i, MembershipValue(q));
    }
  };
  for (std::uint32_t i = 0; i < av.n; ++i) {
    add(i, i, av.top);
    const std::uint32_t col = i % av.width;
    if (col + 1 < av.width) add(i, i + 1, av.right[i]);
    if (i + av.width < av.n) add(i, i + av.width, av.down[i]);
    if (av.diagonals && i + av.width < av.n) {
      if (col + 1 < av.width) add(i, i + av.width + 1, av.down_right[i]);
      if (col > 0) add(i, i + av.width - 1, av.down_left[i]);
    }
  }
  return r;
}

}  // namespace fuzzydd
