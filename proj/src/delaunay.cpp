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

#include "lineseg/delaunay.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

namespace lineseg {

namespace {

using i128 = __int128;

constexpr int kGhost = -1;
constexpr std::int64_t kCoordLimit = 1 << 20;

int sign_of(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

int orient2d_sign(IntPoint a, IntPoint b, IntPoint c) {
    i128 det = i128(b.x - a.x) * (c.y - a.y) - i128(b.y - a.y) * (c.x - a.x);
    return sign_of(det);
}

int incircle_sign(IntPoint a, IntPoint b, IntPoint c, IntPoint d) {
    i128 adx = a.x - d.x, ady = a.y - d.y;
    i128 bdx = b.x - d.x, bdy = b.y - d.y;
    i128 cdx = c.x - d.x, cdy = c.y - d.y;
    i128 alift = adx * adx + ady * ady;
    i128 blift = bdx * bdx + bdy * bdy;
    i128 clift = cdx * cdx + cdy * cdy;
    i128 det = adx * (bdy * clift - cdy * blift) - ady * (bdx * clift - cdx * blift) +
               alift * (bdx * cdy - cdx * bdy);
    return sign_of(det);
}

namespace {

struct Tri {
    std::array<int, 3> v;  // vertex ids, kGhost marks the vertex at infinity
    std::array<int, 3> n;  // neighbor across edge k = (v[k], v[(k+1)%3])
    bool alive = true;

    bool is_ghost() const { return v[0] == kGhost || v[1] == kGhost || v[2] == kGhost; }
    int ghost_slot() const {
        for (int k = 0; k < 3; ++k)
            if (v[k] == kGhost) return k;
        return -1;
    }
    int edge_of(int a, int b) const {  // directed edge (a, b)
        for (int k = 0; k < 3; ++k)
            if (v[k] == a && v[(k + 1) % 3] == b) return k;
        return -1;
    }
};

class Builder {
public:
    explicit Builder(const std::vector<IntPoint>& pts) : pts_(pts) {}

    Triangulation run() {
        const std::size_t n = pts_.size();
        if (n < 3) throw DegenerateGraphError("delaunay: fewer than 3 points");
        for (const auto& p : pts_)
            if (std::llabs(p.x) > kCoordLimit || std::llabs(p.y) > kCoordLimit)
                throw std::invalid_argument("delaunay: coordinate out of range");

        seed_triangle();
        for (std::size_t i = 0; i < n; ++i) {
            if (i == seed_[0] || i == seed_[1] || i == seed_[2]) continue;
            insert(static_cast<int>(i));
        }
        canonicalize_cocircular();
        return extract();
    }

private:
    const std::vector<IntPoint>& pts_;
    std::vector<Tri> tris_;
    std::vector<int> mark_;  // insertion stamp per triangle, parallel to tris_
    std::array<std::size_t, 3> seed_{};
    int stamp_ = 0;
    int last_real_ = 0;

    IntPoint pt(int id) const { return pts_[static_cast<std::size_t>(id)]; }

    // Finds the first non-collinear triple, preferring low indices.
    void seed_triangle() {
        std::size_t i0 = 0;
        std::size_t i1 = i0 + 1;
        while (i1 < pts_.size() && pts_[i1].x == pts_[i0].x && pts_[i1].y == pts_[i0].y) ++i1;
        if (i1 >= pts_.size()) throw DegenerateGraphError("delaunay: all points coincide");
        std::size_t i2 = i1 + 1;
        while (i2 < pts_.size() && orient2d_sign(pts_[i0], pts_[i1], pts_[i2]) == 0) ++i2;
        if (i2 >= pts_.size()) throw DegenerateGraphError("delaunay: all points collinear");
        seed_ = {i0, i1, i2};

        int a = static_cast<int>(i0), b = static_cast<int>(i1), c = static_cast<int>(i2);
        if (orient2d_sign(pt(a), pt(b), pt(c)) < 0) std::swap(b, c);
        // Real triangle 0 plus the three ghosts closing the outer face.
        tris_.push_back({{a, b, c}, {1, 2, 3}, true});
        tris_.push_back({{b, a, kGhost}, {0, 3, 2}, true});  // across (a,b)
        tris_.push_back({{c, b, kGhost}, {0, 1, 3}, true});  // across (b,c)
        tris_.push_back({{a, c, kGhost}, {0, 2, 1}, true});  // across (c,a)
        mark_.assign(4, 0);
        last_real_ = 0;
    }

    // Conflict = p strictly inside the circumcircle.  A ghost triangle owns
    // the open half plane outside its hull edge plus the open edge itself.
    bool conflicts(int t, IntPoint p) const {
        const Tri& tr = tris_[static_cast<std::size_t>(t)];
        int g = tr.ghost_slot();
        if (g < 0) return incircle_sign(pt(tr.v[0]), pt(tr.v[1]), pt(tr.v[2]), p) > 0;
        // Stored edge runs against the hull orientation, so outside is left.
        IntPoint s = pt(tr.v[(g + 1) % 3]);
        IntPoint e = pt(tr.v[(g + 2) % 3]);
        int o = orient2d_sign(s, e, p);
        if (o > 0) return true;
        if (o != 0) return false;
        i128 dot = i128(p.x - s.x) * (e.x - s.x) + i128(p.y - s.y) * (e.y - s.y);
        i128 len2 = i128(e.x - s.x) * (e.x - s.x) + i128(e.y - s.y) * (e.y - s.y);
        return dot > 0 && dot < len2;
    }

    // Orientation walk from the previous insertion site toward p.  Stepping
    // past the hull lands on a ghost, which is then necessarily in conflict.
    int locate(IntPoint p) const {
        int t = last_real_;
        int came_from = -1;
        for (std::size_t guard = 0; guard <= 3 * tris_.size() + 16; ++guard) {
            const Tri& tr = tris_[static_cast<std::size_t>(t)];
            if (tr.is_ghost()) return t;
            int next = -1;
            for (int k = 0; k < 3; ++k) {
                if (tr.n[k] == came_from) continue;
                if (orient2d_sign(pt(tr.v[k]), pt(tr.v[(k + 1) % 3]), p) < 0) {
                    next = tr.n[k];
                    break;
                }
            }
            if (next < 0) return t;  // p inside or on the boundary of t
            came_from = t;
            t = next;
        }
        throw std::runtime_error("delaunay: point location walk did not terminate");
    }

    void insert(int pid) {
        IntPoint p = pt(pid);
        int start = locate(p);
        for (int vid : tris_[static_cast<std::size_t>(start)].v)
            if (vid != kGhost && pt(vid).x == p.x && pt(vid).y == p.y)
                throw DegenerateGraphError("delaunay: duplicate point");
        if (!conflicts(start, p))
            throw std::runtime_error("delaunay: located triangle not in conflict");

        // Grow the conflict cavity by adjacency.
        ++stamp_;
        std::vector<int> cavity;
        std::vector<int> queue{start};
        mark_[static_cast<std::size_t>(start)] = stamp_;
        while (!queue.empty()) {
            int t = queue.back();
            queue.pop_back();
            cavity.push_back(t);
            for (int nb : tris_[static_cast<std::size_t>(t)].n) {
                if (mark_[static_cast<std::size_t>(nb)] == stamp_) continue;
                if (conflicts(nb, p)) {
                    mark_[static_cast<std::size_t>(nb)] = stamp_;
                    queue.push_back(nb);
                }
            }
        }

        // Boundary of the cavity: directed edges whose opposite triangle
        // survives.  Each gets fanned to p; shared (p, x) edges are stitched
        // through pending_, keyed by the vertex x.
        std::unordered_map<int, std::pair<int, int>> pending;
        int first_new = -1;
        for (int t : cavity) {
            const Tri tr = tris_[static_cast<std::size_t>(t)];  // copy, tris_ grows below
            for (int k = 0; k < 3; ++k) {
                int outside = tr.n[k];
                if (mark_[static_cast<std::size_t>(outside)] == stamp_) continue;
                int u = tr.v[k];
                int v = tr.v[(k + 1) % 3];
                int nt = static_cast<int>(tris_.size());
                tris_.push_back({{u, v, pid}, {outside, -2, -2}, true});
                mark_.push_back(0);
                int back = tris_[static_cast<std::size_t>(outside)].edge_of(v, u);
                tris_[static_cast<std::size_t>(outside)].n[static_cast<std::size_t>(back)] = nt;
                // edge 1 = (v, pid) pairs with the fan triangle whose edge 2 is (pid, v)
                auto it = pending.find(v);
                if (it != pending.end() && it->second.second == 2) {
                    int other = it->second.first;
                    tris_[static_cast<std::size_t>(nt)].n[1] = other;
                    tris_[static_cast<std::size_t>(other)].n[2] = nt;
                    pending.erase(it);
                } else {
                    pending[v] = {nt, 1};
                }
                auto it2 = pending.find(u);
                if (it2 != pending.end() && it2->second.second == 1) {
                    int other = it2->second.first;
                    tris_[static_cast<std::size_t>(nt)].n[2] = other;
                    tris_[static_cast<std::size_t>(other)].n[1] = nt;
                    pending.erase(it2);
                } else {
                    pending[u] = {nt, 2};
                }
                if (first_new < 0 && !tris_[static_cast<std::size_t>(nt)].is_ghost())
                    first_new = nt;
            }
        }
        if (!pending.empty()) throw std::runtime_error("delaunay: cavity boundary not closed");
        for (int t : cavity) tris_[static_cast<std::size_t>(t)].alive = false;
        if (first_new >= 0) last_real_ = first_new;
    }

    // Exactly cocircular quads keep the diagonal touching the lowest vertex
    // id.  Each flip strictly lowers the smaller endpoint id of the flipped
    // edge, so the loop terminates.
    void canonicalize_cocircular() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t t1 = 0; t1 < tris_.size(); ++t1) {
                if (!tris_[t1].alive || tris_[t1].is_ghost()) continue;
                for (int k = 0; k < 3; ++k) {
                    int t2 = tris_[t1].n[k];
                    if (t2 < static_cast<int>(t1)) continue;  // visit each pair once
                    Tri& a = tris_[t1];
                    Tri& b = tris_[static_cast<std::size_t>(t2)];
                    if (!b.alive || b.is_ghost()) continue;
                    int u = a.v[k];
                    int v = a.v[(k + 1) % 3];
                    int c = a.v[(k + 2) % 3];
                    int kb = b.edge_of(v, u);
                    int d = b.v[(kb + 2) % 3];
                    if (incircle_sign(pt(a.v[0]), pt(a.v[1]), pt(a.v[2]), pt(d)) != 0) continue;
                    if (std::min(c, d) >= std::min(u, v)) continue;
                    flip(static_cast<int>(t1), k);
                    changed = true;
                    break;
                }
            }
        }
    }

    // Replaces diagonal (u,v) of the quad u -> d -> v -> c with (c,d).
    // t1 = (u, v, c), t2 = (v, u, d) become (c, d, v) and (d, c, u).
    void flip(int t1, int k) {
        Tri& a = tris_[static_cast<std::size_t>(t1)];
        int t2 = a.n[k];
        Tri& b = tris_[static_cast<std::size_t>(t2)];
        int u = a.v[k];
        int v = a.v[(k + 1) % 3];
        int c = a.v[(k + 2) % 3];
        int kb = b.edge_of(v, u);
        int d = b.v[(kb + 2) % 3];

        int n_vc = a.n[(k + 1) % 3];
        int n_cu = a.n[(k + 2) % 3];
        int n_ud = b.n[(kb + 1) % 3];
        int n_dv = b.n[(kb + 2) % 3];

        a.v = {c, d, v};
        a.n = {t2, n_dv, n_vc};
        b.v = {d, c, u};
        b.n = {t1, n_cu, n_ud};

        auto relink = [&](int t, int from_u, int from_v, int to) {
            Tri& tr = tris_[static_cast<std::size_t>(t)];
            int e = tr.edge_of(from_u, from_v);
            tr.n[static_cast<std::size_t>(e)] = to;
        };
        relink(n_dv, v, d, t1);  // previously bordered t2
        relink(n_cu, u, c, t2);  // previously bordered t1
    }

    Triangulation extract() const {
        Triangulation out;
        for (const Tri& t : tris_) {
            if (!t.alive || t.is_ghost()) continue;
            std::array<int, 3> tri = t.v;
            // rotate lowest id first, orientation preserved
            int lo = static_cast<int>(std::min_element(tri.begin(), tri.end()) - tri.begin());
            std::array<int, 3> rot = {tri[lo], tri[(lo + 1) % 3], tri[(lo + 2) % 3]};
            out.triangles.push_back(rot);
            for (int k = 0; k < 3; ++k) {
                int i = rot[k], j = rot[(k + 1) % 3];
                out.edges.emplace_back(std::min(i, j), std::max(i, j));
            }
        }
        std::sort(out.edges.begin(), out.edges.end());
        out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
        std::sort(out.triangles.begin(), out.triangles.end());
        return out;
    }
};

}  // namespace

Triangulation delaunay_triangulate(const std::vector<IntPoint>& points) {
    Builder b(points);
    return b.run();
}

}  // namespace lineseg
