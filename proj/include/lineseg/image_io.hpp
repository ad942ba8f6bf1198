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

#ifndef LINESEG_IMAGE_IO_HPP
#define LINESEG_IMAGE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lineseg {

// Row-major grayscale raster, 16 bits per sample.  8-bit inputs are widened
// on load; writers pick the narrowest depth that fits the payload.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> pixels;

    std::uint16_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint16_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 bytes per pixel

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
        pixels[i] = r;
        pixels[i + 1] = g;
        pixels[i + 2] = b;
    }
};

// Reads a PNG (any color type, reduced to grayscale) or a binary PGM (P5).
// Throws std::runtime_error on unreadable or malformed files.
GrayImage read_gray(const std::string& path);

// Writes 8-bit grayscale when every sample fits, 16-bit otherwise.
void write_gray_png(const std::string& path, const GrayImage& image);

void write_rgb_png(const std::string& path, const RgbImage& image);

void write_pgm(const std::string& path, const GrayImage& image);

// Label rasters travel as grayscale PNGs whose sample value is the label id
// (0 = background).
void write_labels_png(const std::string& path, const std::vector<std::uint32_t>& labels,
                      int width, int height);
std::vector<std::uint32_t> read_labels_png(const std::string& path, int* width, int* height);

}  // namespace lineseg

#endif
