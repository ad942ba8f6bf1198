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

#include "lineseg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "lineseg/rng.hpp"

namespace lineseg {

void MrfGraph::finalize(double cv) {
    neighborCounts.assign(vertices.size(), 0);
    for (const auto& [i, j] : edges) {
        ++neighborCounts[static_cast<std::size_t>(i)];
        ++neighborCounts[static_cast<std::size_t>(j)];
    }
    countingNumbers.assign(vertices.size(), cv);
}

std::vector<SamplePoint> sample_text_pixels(const BinaryDocument& doc, double ratio,
                                            std::uint64_t seed) {
    if (ratio <= 0.0 || ratio > 1.0) throw std::invalid_argument("sample: ratio must be in (0,1]");
    if (doc.text_pixel_count() == 0) throw std::runtime_error("sample: empty text mask");

    constexpr int kCell = 32;
    const int cols = (doc.width() + kCell - 1) / kCell;
    const int rows = (doc.height() + kCell - 1) / kCell;

    // Bucket text pixels by grid cell, row-major over cells.
    std::vector<std::vector<PixelCoord>> cells(static_cast<std::size_t>(cols) * rows);
    for (int y = 0; y < doc.height(); ++y)
        for (int x = 0; x < doc.width(); ++x)
            if (doc.text_at(x, y))
                cells[static_cast<std::size_t>(y / kCell) * cols + x / kCell].push_back({x, y});

    const std::size_t target =
        static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(doc.text_pixel_count())));

    struct CellQuota {
        std::size_t cell;
        std::size_t quota;
        std::size_t population;
    };
    std::vector<CellQuota> quotas;
    std::size_t total = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].empty()) continue;
        std::size_t q = static_cast<std::size_t>(
            std::ceil(ratio * static_cast<double>(cells[c].size())));
        q = std::max<std::size_t>(q, 1);
        quotas.push_back({c, q, cells[c].size()});
        total += q;
    }

    // Ceiling per cell overshoots the exact page total; shave the excess from
    // the most loaded cells first, keeping at least one point per cell for as
    // long as arithmetic allows.
    auto shave = [&](std::size_t floor_quota) {
        while (total > target) {
            CellQuota* best = nullptr;
            for (auto& q : quotas)
                if (q.quota > floor_quota && (!best || q.quota > best->quota ||
                                              (q.quota == best->quota && q.cell < best->cell)))
                    best = &q;
            if (!best) break;
            --best->quota;
            --total;
        }
    };
    shave(1);
    shave(0);

    std::vector<SamplePoint> points;
    points.reserve(target);
    Rng rng(seed);
    for (const auto& q : quotas) {
        auto& pix = cells[q.cell];
        // Partial Fisher-Yates: the first `quota` slots become the sample.
        for (std::size_t i = 0; i < q.quota; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(pix.size() - i));
            std::swap(pix[i], pix[j]);
            const PixelCoord& p = pix[i];
            SamplePoint sp;
            sp.id = static_cast<int>(points.size());
            sp.x = p.x;
            sp.y = p.y;
            sp.componentId = doc.component_at(p.x, p.y);
            points.push_back(sp);
        }
    }
    return points;
}

MrfGraph build_delaunay(const std::vector<SamplePoint>& points, double cv) {
    std::vector<IntPoint> ipts;
    ipts.reserve(points.size());
    for (const auto& p : points) {
        double rx = std::round(p.x), ry = std::round(p.y);
        if (std::abs(p.x - rx) > 1e-9 || std::abs(p.y - ry) > 1e-9)
            throw std::invalid_argument("build_delaunay: coordinates must be integral pixels");
        ipts.push_back({static_cast<std::int64_t>(rx), static_cast<std::int64_t>(ry)});
    }
    Triangulation tri = delaunay_triangulate(ipts);

    MrfGraph g;
    g.vertices = points;
    g.edges = std::move(tri.edges);
    g.triangles = std::move(tri.triangles);
    g.finalize(cv);
    return g;
}

std::vector<MrfGraph> segment_regions(const MrfGraph& graph) {
    const int n = graph.vertex_count();
    auto edge_len = [&](int i, int j) {
        double dx = graph.vertices[static_cast<std::size_t>(i)].x -
                    graph.vertices[static_cast<std::size_t>(j)].x;
        double dy = graph.vertices[static_cast<std::size_t>(i)].y -
                    graph.vertices[static_cast<std::size_t>(j)].y;
        return std::hypot(dx, dy);
    };

    // Image-dependent threshold: mean + 2 sigma over the longest side of
    // every triangle.
    std::vector<double> longest;
    longest.reserve(graph.triangles.size());
    for (const auto& t : graph.triangles) {
        double m = std::max({edge_len(t[0], t[1]), edge_len(t[1], t[2]), edge_len(t[0], t[2])});
        longest.push_back(m);
    }
    double threshold = 0.0;
    if (!longest.empty()) {
        double mean = std::accumulate(longest.begin(), longest.end(), 0.0) /
                      static_cast<double>(longest.size());
        double var = 0.0;
        for (double v : longest) var += (v - mean) * (v - mean);
        var /= static_cast<double>(longest.size());
        threshold = mean + 2.0 * std::sqrt(var);
    }

    std::vector<std::pair<int, int>> kept_edges;
    for (std::size_t ti = 0; ti < graph.triangles.size(); ++ti) {
        if (longest[ti] > threshold) continue;
        const auto& t = graph.triangles[ti];
        for (int k = 0; k < 3; ++k) {
            int i = t[k], j = t[(k + 1) % 3];
            kept_edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::sort(kept_edges.begin(), kept_edges.end());
    kept_edges.erase(std::unique(kept_edges.begin(), kept_edges.end()), kept_edges.end());

    // Graphs without triangles (chains and singletons built by the caller)
    // pass through as a single region.
    if (graph.triangles.empty()) kept_edges = graph.edges;

    // Union-find over kept edges.
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> rank_(static_cast<std::size_t>(n), 0);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    for (const auto& [i, j] : kept_edges) {
        int ri = find(i), rj = find(j);
        if (ri == rj) continue;
        if (rank_[static_cast<std::size_t>(ri)] < rank_[static_cast<std::size_t>(rj)])
            std::swap(ri, rj);
        parent[static_cast<std::size_t>(rj)] = ri;
        if (rank_[static_cast<std::size_t>(ri)] == rank_[static_cast<std::size_t>(rj)])
            ++rank_[static_cast<std::size_t>(ri)];
    }

    // Region ids in order of first appearance by vertex id.
    std::vector<int> region_of(static_cast<std::size_t>(n), -1);
    int regions = 0;
    for (int v = 0; v < n; ++v) {
        int r = find(v);
        if (region_of[static_cast<std::size_t>(r)] < 0)
            region_of[static_cast<std::size_t>(r)] = regions++;
        region_of[static_cast<std::size_t>(v)] = region_of[static_cast<std::size_t>(r)];
    }

    std::vector<MrfGraph> out(static_cast<std::size_t>(regions));
    std::vector<int> local(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        MrfGraph& g = out[static_cast<std::size_t>(region_of[static_cast<std::size_t>(v)])];
        local[static_cast<std::size_t>(v)] = g.vertex_count();
        g.vertices.push_back(graph.vertices[static_cast<std::size_t>(v)]);
    }
    for (const auto& [i, j] : kept_edges) {
        MrfGraph& g = out[static_cast<std::size_t>(region_of[static_cast<std::size_t>(i)])];
        int li = local[static_cast<std::size_t>(i)];
        int lj = local[static_cast<std::size_t>(j)];
        g.edges.emplace_back(std::min(li, lj), std::max(li, lj));
    }
    for (std::size_t r = 0; r < out.size(); ++r) {
        std::sort(out[r].edges.begin(), out[r].edges.end());
        double cv = graph.countingNumbers.empty() ? 1.0 : graph.countingNumbers[0];
        out[r].finalize(cv);
    }
    return out;
}

void dump_graph(const MrfGraph& graph, std::ostream& out) {
    for (const auto& v : graph.vertices) out << "V " << v.id << ' ' << v.x << ' ' << v.y << '\n';
    for (const auto& [i, j] : graph.edges) out << "E " << i << ' ' << j << '\n';
}

}  // namespace lineseg
