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
#include <span>
#include <string>
#include <vector>

#include "fuzzydd/dense_relation.hpp"
#include "fuzzydd/fuzzy_relation.hpp"

namespace fuzzydd {

struct Pixel {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(Pixel, Pixel) = default;
};

/// An RGB raster. Grayscale inputs are widened to three equal channels.
class Image {
 public:
  Image(std::uint32_t width, std::uint32_t height);

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::uint32_t pixel_count() const noexcept { return width_ * height_; }

  /// Pixels are indexed row-major: index = row * width + col.
  Pixel pixel(std::uint32_t index) const { return pixels_.at(index); }
  void set_pixel(std::uint32_t index, Pixel p) { pixels_.at(index) = p; }

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  std::vector<Pixel> pixels_;
};

/// Parses a netpbm image: P2/P5 (grayscale) or P3/P6 (RGB), maxval 255
/// only. Malformed input raises parse_error carrying the byte offset.
Image load_image(std::span<const unsigned char> bytes);
Image load_image_file(const std::string& path);

/// Squared channel distance r^2 + g^2 + b^2 of the difference; at most
/// 3 * 255^2 = 195075.
std::uint32_t color_diff(Pixel a, Pixel b);

/// How the similarity of two colors is normalized by the largest color
/// difference delta present in the image:
///   Delta:     1 - sqrt(diff) / delta
///   SqrtDelta: 1 - sqrt(diff) / sqrt(delta)   (uses the full [0,1] range)
enum class SimilarityNorm : std::uint8_t { Delta, SqrtDelta };

enum class Neighborhood : std::uint8_t { Four, Eight };

struct SimilarityContext {
  std::uint32_t delta = 0;  // max color_diff over all pixel pairs
  Precision precision;
  SimilarityNorm norm = SimilarityNorm::Delta;
  Neighborhood neighborhood = Neighborhood::Four;
};

/// Scans the image's distinct colors for the largest pairwise difference.
SimilarityContext compute_delta(const Image& img, Precision p,
                                SimilarityNorm norm = SimilarityNorm::Delta,
                                Neighborhood nb = Neighborhood::Four);

/// Similarity of two colors in [0, 1]. Identical colors (and any pair when
/// delta is zero) are fully similar.
double simil(Pixel a, Pixel b, const SimilarityContext& ctx);

/// Fuzzy adjacency of an image: over pixel indices, cell (i, i) is 1, cells
/// of neighboring pixels hold their quantized color similarity, everything
/// else 0. The result is reflexive and symmetric by construction.
FuzzyRelation build_affinity(NodeTable& table, const Image& img,
                             SimilarityNorm norm = SimilarityNorm::Delta,
                             Neighborhood nb = Neighborhood::Four);

/// Same relation in the dense representation.
DenseRelation build_affinity_dense(const Image& img, Precision p,
                                   SimilarityNorm norm = SimilarityNorm::Delta,
                                   Neighborhood nb = Neighborhood::Four);

}  // namespace fuzzydd
