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

#ifndef LINESEG_GRAPH_HPP
#define LINESEG_GRAPH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "lineseg/delaunay.hpp"
#include "lineseg/document.hpp"

namespace lineseg {

// One observed pixel variable.  id is the page-wide sample index and stays
// stable when the point is copied into a region subgraph.
struct SamplePoint {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    int componentId = -1;
};

// Pairwise topology over the sampled pixels.  Each vertex carries one hidden
// label variable; edges come from the Delaunay triangulation (pruned copies
// after region segmentation keep their own self-contained indices).
struct MrfGraph {
    std::vector<SamplePoint> vertices;
    std::vector<std::pair<int, int>> edges;        // unordered pairs, first < second
    std::vector<std::array<int, 3>> triangles;     // kept for region segmentation
    std::vector<double> countingNumbers;           // c_v > 0
    std::vector<int> neighborCounts;               // A_v = incident edge count

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    // Recomputes neighborCounts from the edge set and fills countingNumbers
    // with cv for every vertex.
    void finalize(double cv);
};

// Stratified uniform sampling of text pixels over a fixed 32x32 grid: every
// occupied cell contributes points in proportion to its pixel count, and the
// total is exactly ceil(ratio * |text pixels|).  Deterministic per seed.
std::vector<SamplePoint> sample_text_pixels(const BinaryDocument& doc, double ratio,
                                            std::uint64_t seed);

// Delaunay graph over the sampled points (coordinates must be integral).
// Throws DegenerateGraphError for < 3 points or collinear input; callers fall
// back to chain/singleton graphs in that case.
MrfGraph build_delaunay(const std::vector<SamplePoint>& points, double cv = 1.0);

// Removes every triangle whose longest side exceeds mean + 2 sigma of all
// longest sides, then splits the surviving edge set into connected
// components.  Vertices that lose all edges come back as singleton regions.
std::vector<MrfGraph> segment_regions(const MrfGraph& graph);

// Plain-text debug dump: `V id x y` per vertex, `E i j` per edge.
void dump_graph(const MrfGraph& graph, std::ostream& out);

}  // namespace lineseg

#endif
