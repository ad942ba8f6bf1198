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

#ifndef LINESEG_DELAUNAY_HPP
#define LINESEG_DELAUNAY_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lineseg {

struct DegenerateGraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntPoint {
    std::int64_t x;
    std::int64_t y;
};

struct Triangulation {
    std::vector<std::array<int, 3>> triangles;  // CCW vertex index triples
    std::vector<std::pair<int, int>> edges;     // i < j, lexicographically sorted
};

// Incremental Bowyer-Watson with ghost triangles on the hull.  All predicates
// are evaluated in 128-bit integer arithmetic, so results are exact for any
// input with |coordinate| <= 2^20.  Exactly cocircular quads are canonicalized
// to the diagonal containing the lowest vertex id.
//
// Throws DegenerateGraphError for fewer than 3 points, all-collinear input,
// or duplicate points; throws std::invalid_argument for out-of-range
// coordinates.
Triangulation delaunay_triangulate(const std::vector<IntPoint>& points);

// Exact predicates, exposed for the geometry tests.
// orient2d > 0 when (a, b, c) turn counterclockwise.
int orient2d_sign(IntPoint a, IntPoint b, IntPoint c);
// incircle > 0 when d lies strictly inside the circumcircle of CCW (a, b, c).
int incircle_sign(IntPoint a, IntPoint b, IntPoint c, IntPoint d);

}  // namespace lineseg

#endif
