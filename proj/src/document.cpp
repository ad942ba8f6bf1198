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

#include "lineseg/document.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lineseg {

BinaryDocument BinaryDocument::from_mask(int width, int height,
                                         const std::vector<std::uint8_t>& mask) {
    if (width <= 0 || height <= 0) throw std::runtime_error("document: image with zero pixels");
    if (mask.size() != static_cast<std::size_t>(width) * height)
        throw std::runtime_error("document: mask size mismatch");

    BinaryDocument doc;
    doc.width_ = width;
    doc.height_ = height;
    doc.mask_.resize(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) doc.mask_[i] = mask[i] ? 1 : 0;
    doc.labels_.assign(mask.size(), -1);

    // 8-connected labeling, iterative flood fill.
    std::vector<PixelCoord> stack;
    int next_id = 0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            std::size_t idx = static_cast<std::size_t>(y) * width + x;
            if (!doc.mask_[idx] || doc.labels_[idx] >= 0) continue;
            ConnectedComponent cc;
            cc.id = next_id;
            cc.bbox = {x, y, x, y};
            stack.push_back({x, y});
            doc.labels_[idx] = next_id;
            while (!stack.empty()) {
                PixelCoord p = stack.back();
                stack.pop_back();
                cc.pixels.push_back(p);
                cc.bbox.xmin = std::min(cc.bbox.xmin, p.x);
                cc.bbox.xmax = std::max(cc.bbox.xmax, p.x);
                cc.bbox.ymin = std::min(cc.bbox.ymin, p.y);
                cc.bbox.ymax = std::max(cc.bbox.ymax, p.y);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = p.x + dx;
                        int ny = p.y + dy;
                        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
                        std::size_t nidx = static_cast<std::size_t>(ny) * width + nx;
                        if (doc.mask_[nidx] && doc.labels_[nidx] < 0) {
                            doc.labels_[nidx] = next_id;
                            stack.push_back({nx, ny});
                        }
                    }
                }
            }
            doc.text_pixels_ += cc.pixels.size();
            doc.components_.push_back(std::move(cc));
            ++next_id;
        }
    }

    if (!doc.components_.empty()) {
        double hsum = 0.0, wsum = 0.0;
        for (const auto& cc : doc.components_) {
            hsum += cc.bbox.height();
            wsum += cc.bbox.width();
        }
        doc.mean_cc_height_ = hsum / doc.components_.size();
        doc.mean_cc_width_ = wsum / doc.components_.size();
    }
    return doc;
}

int otsu_threshold(const std::vector<std::uint64_t>& histogram) {
    if (histogram.size() != 256) throw std::runtime_error("otsu: histogram must have 256 bins");
    std::uint64_t total = 0;
    double sum_all = 0.0;
    for (int i = 0; i < 256; ++i) {
        total += histogram[i];
        sum_all += static_cast<double>(i) * histogram[i];
    }
    if (total == 0) return 127;

    double sum_lo = 0.0;
    std::uint64_t count_lo = 0;
    double best_var = -1.0;
    int best_t = 127;
    for (int t = 0; t < 256; ++t) {
        count_lo += histogram[t];
        if (count_lo == 0) continue;
        std::uint64_t count_hi = total - count_lo;
        if (count_hi == 0) break;
        sum_lo += static_cast<double>(t) * histogram[t];
        double mean_lo = sum_lo / count_lo;
        double mean_hi = (sum_all - sum_lo) / count_hi;
        double between = static_cast<double>(count_lo) * count_hi * (mean_lo - mean_hi) * (mean_lo - mean_hi);
        if (between > best_var) {
            best_var = between;
            best_t = t;
        }
    }
    return best_t;
}

BinaryDocument load_document(const std::string& path, int binarization_threshold) {
    GrayImage img = read_gray(path);
    if (img.width <= 0 || img.height <= 0)
        throw std::runtime_error(path + ": image with zero pixels");

    // Collapse to 8-bit range for thresholding purposes.
    std::uint16_t maxv = 0;
    for (std::uint16_t v : img.pixels) maxv = std::max(maxv, v);
    const int shift = maxv > 255 ? 8 : 0;

    std::set<std::uint16_t> distinct;
    for (std::uint16_t v : img.pixels) {
        distinct.insert(v);
        if (distinct.size() > 2) break;
    }

    std::vector<std::uint8_t> mask(img.pixels.size(), 0);
    if (distinct.size() <= 2 && binarization_threshold < 0) {
        // Bilevel input: the darker value is ink.  All-white stays empty and
        // an all-ink page is taken at face value.
        std::uint16_t lo = *distinct.begin();
        std::uint16_t hi = *distinct.rbegin();
        if (distinct.size() == 1) {
            bool ink = lo == 0;
            for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = ink ? 1 : 0;
        } else {
            (void)hi;
            for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = img.pixels[i] == lo ? 1 : 0;
        }
    } else {
        int threshold = binarization_threshold;
        if (threshold < 0) {
            std::vector<std::uint64_t> hist(256, 0);
            for (std::uint16_t v : img.pixels) ++hist[v >> shift];
            threshold = otsu_threshold(hist);
        }
        for (std::size_t i = 0; i < mask.size(); ++i)
            mask[i] = (img.pixels[i] >> shift) <= threshold ? 1 : 0;
    }
    return BinaryDocument::from_mask(img.width, img.height, mask);
}

}  // namespace lineseg
