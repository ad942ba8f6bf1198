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

#include "lineseg/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace lineseg {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string& path, const char* what) {
    throw std::runtime_error(path + ": " + what);
}

bool has_suffix(const std::string& s, const char* suffix) {
    std::size_t n = std::strlen(suffix);
    return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

GrayImage read_pgm(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) fail(path, "cannot open");
    auto next_token = [&]() -> long {
        int c;
        do {
            c = std::fgetc(f.get());
            if (c == '#') {
                while (c != '\n' && c != EOF) c = std::fgetc(f.get());
            }
        } while (c == ' ' || c == '\t' || c == '\n' || c == '\r');
        long value = 0;
        bool any = false;
        while (c >= '0' && c <= '9') {
            value = value * 10 + (c - '0');
            any = true;
            c = std::fgetc(f.get());
        }
        if (!any) fail(path, "malformed PGM header");
        return value;
    };

    char magic[3] = {0, 0, 0};
    if (std::fread(magic, 1, 2, f.get()) != 2 || magic[0] != 'P' || magic[1] != '5')
        fail(path, "not a binary PGM");
    long w = next_token();
    long h = next_token();
    long maxval = next_token();
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) fail(path, "bad PGM dimensions");

    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.resize(static_cast<std::size_t>(w) * h);
    std::size_t count = img.pixels.size();
    if (maxval < 256) {
        std::vector<std::uint8_t> raw(count);
        if (std::fread(raw.data(), 1, count, f.get()) != count) fail(path, "truncated PGM");
        for (std::size_t i = 0; i < count; ++i) img.pixels[i] = raw[i];
    } else {
        std::vector<std::uint8_t> raw(count * 2);
        if (std::fread(raw.data(), 1, count * 2, f.get()) != count * 2) fail(path, "truncated PGM");
        for (std::size_t i = 0; i < count; ++i)
            img.pixels[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
    }
    return img;
}

GrayImage read_png_gray(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) fail(path, "cannot open");

    png_byte header[8];
    if (std::fread(header, 1, 8, f.get()) != 8 || png_sig_cmp(header, 0, 8))
        fail(path, "not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail(path, "png alloc failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(path, "png alloc failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "png decode error");
    }
    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
        color == PNG_COLOR_TYPE_PALETTE)
        png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_read_update_info(png, info);

    depth = png_get_bit_depth(png, info);
    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.resize(static_cast<std::size_t>(w) * h);

    std::vector<png_byte> row(png_get_rowbytes(png, info));
    for (png_uint_32 y = 0; y < h; ++y) {
        png_read_row(png, row.data(), nullptr);
        if (depth == 16) {
            for (png_uint_32 x = 0; x < w; ++x)
                img.pixels[static_cast<std::size_t>(y) * w + x] =
                    static_cast<std::uint16_t>((row[2 * x] << 8) | row[2 * x + 1]);
        } else {
            for (png_uint_32 x = 0; x < w; ++x)
                img.pixels[static_cast<std::size_t>(y) * w + x] = row[x];
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void write_png_impl(const std::string& path, int width, int height, int depth, int color,
                    const std::vector<std::vector<png_byte>>& rows) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) fail(path, "cannot open for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail(path, "png alloc failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        fail(path, "png alloc failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(path, "png encode error");
    }
    png_init_io(png, f.get());
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, width, height, depth, color, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (const auto& row : rows) png_write_row(png, const_cast<png_bytep>(row.data()));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

GrayImage read_gray(const std::string& path) {
    if (has_suffix(path, ".pgm") || has_suffix(path, ".PGM")) return read_pgm(path);
    return read_png_gray(path);
}

void write_gray_png(const std::string& path, const GrayImage& image) {
    std::uint16_t maxval = 0;
    for (std::uint16_t v : image.pixels) maxval = std::max(maxval, v);
    const bool wide = maxval > 255;
    std::vector<std::vector<png_byte>> rows(image.height);
    for (int y = 0; y < image.height; ++y) {
        auto& row = rows[y];
        if (wide) {
            row.resize(static_cast<std::size_t>(image.width) * 2);
            for (int x = 0; x < image.width; ++x) {
                std::uint16_t v = image.at(x, y);
                row[2 * x] = static_cast<png_byte>(v >> 8);
                row[2 * x + 1] = static_cast<png_byte>(v & 0xff);
            }
        } else {
            row.resize(image.width);
            for (int x = 0; x < image.width; ++x) row[x] = static_cast<png_byte>(image.at(x, y));
        }
    }
    write_png_impl(path, image.width, image.height, wide ? 16 : 8, PNG_COLOR_TYPE_GRAY, rows);
}

void write_rgb_png(const std::string& path, const RgbImage& image) {
    std::vector<std::vector<png_byte>> rows(image.height);
    for (int y = 0; y < image.height; ++y) {
        rows[y].assign(image.pixels.begin() + static_cast<std::size_t>(y) * image.width * 3,
                       image.pixels.begin() + static_cast<std::size_t>(y + 1) * image.width * 3);
    }
    write_png_impl(path, image.width, image.height, 8, PNG_COLOR_TYPE_RGB, rows);
}

void write_pgm(const std::string& path, const GrayImage& image) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) fail(path, "cannot open for writing");
    std::fprintf(f.get(), "P5\n%d %d\n255\n", image.width, image.height);
    std::vector<std::uint8_t> row(image.width);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x)
            row[x] = static_cast<std::uint8_t>(std::min<std::uint16_t>(image.at(x, y), 255));
        if (std::fwrite(row.data(), 1, row.size(), f.get()) != row.size())
            fail(path, "short write");
    }
}

void write_labels_png(const std::string& path, const std::vector<std::uint32_t>& labels,
                      int width, int height) {
    if (labels.size() != static_cast<std::size_t>(width) * height)
        throw std::runtime_error(path + ": label buffer size mismatch");
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] > 65535) throw std::runtime_error(path + ": label id exceeds 16 bits");
        img.pixels[i] = static_cast<std::uint16_t>(labels[i]);
    }
    write_gray_png(path, img);
}

std::vector<std::uint32_t> read_labels_png(const std::string& path, int* width, int* height) {
    GrayImage img = read_png_gray(path);
    *width = img.width;
    *height = img.height;
    return {img.pixels.begin(), img.pixels.end()};
}

}  // namespace lineseg
