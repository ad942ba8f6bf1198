// Copyright 2026 The lineseg authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINESEG_DOCUMENT_HPP
#define LINESEG_DOCUMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lineseg/image_io.hpp"

namespace lineseg {

struct PixelCoord {
    int x;
    int y;
};

struct BoundingBox {
    int xmin = 0;
    int ymin = 0;
    int xmax = -1;
    int ymax = -1;

    int width() const { return xmax - xmin + 1; }
    int height() const { return ymax - ymin + 1; }
};

struct ConnectedComponent {
    int id = 0;
    std::vector<PixelCoord> pixels;
    BoundingBox bbox;
};

// Binarized page with its 8-connected component index.  Immutable once built;
// shared read-only by everything downstream.
class BinaryDocument {
public:
    BinaryDocument() = default;

    // mask entries: nonzero = ink.
    static BinaryDocument from_mask(int width, int height, const std::vector<std::uint8_t>& mask);

    int width() const { return width_; }
    int height() const { return height_; }
    bool text_at(int x, int y) const { return mask_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }

    const std::vector<ConnectedComponent>& components() const { return components_; }
    // Component id at a pixel, -1 for background.
    int component_at(int x, int y) const { return labels_[static_cast<std::size_t>(y) * width_ + x]; }

    std::size_t text_pixel_count() const { return text_pixels_; }
    double mean_cc_height() const { return mean_cc_height_; }
    double mean_cc_width() const { return mean_cc_width_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> mask_;
    std::vector<std::int32_t> labels_;
    std::vector<ConnectedComponent> components_;
    std::size_t text_pixels_ = 0;
    double mean_cc_height_ = 0.0;
    double mean_cc_width_ = 0.0;
};

// Otsu threshold over a 256-bin histogram; returns the bin index such that
// values <= index form the lower class.  Histogram must have 256 entries.
int otsu_threshold(const std::vector<std::uint64_t>& histogram);

// Loads a PNG or PGM page and binarizes it.  Grayscale inputs are thresholded
// with Otsu unless binarization_threshold is >= 0 (ink = darker side).
// Already bilevel inputs pass through unchanged.
BinaryDocument load_document(const std::string& path, int binarization_threshold = -1);

}  // namespace lineseg

#endif
