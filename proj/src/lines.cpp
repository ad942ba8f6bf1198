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

#include "lineseg/lines.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lineseg {

double local_fitting(const LineModel& line, const SamplePoint& point, double r) {
    const double horizontal = -(point.x - line.c) * (point.x - line.c) / (2.0 * line.sigmaS2);
    const double residue = std::abs(point.y - line.a * point.x - line.b);
    if (residue <= r * line.plateau) return horizontal;
    return -residue * residue / (2.0 * line.sigmaT2) + horizontal;
}

double log_likelihood_exponent(const LineModel& line, double x, double y) {
    const double t = y - line.a * x - line.b;
    const double s = x - line.c;
    return -t * t / (2.0 * line.sigmaT2) - s * s / (2.0 * line.sigmaS2);
}

void compute_plateau(std::vector<LineModel>& lines) {
    std::size_t live = 0;
    for (const auto& l : lines)
        if (!l.frozen) ++live;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        LineModel& li = lines[i];
        if (li.frozen) continue;
        if (live <= 1) {
            li.plateau = 2.0 * std::sqrt(li.sigmaT2);
            continue;
        }
        double closest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < lines.size(); ++j) {
            if (j == i || lines[j].frozen) continue;
            closest = std::min(closest, std::abs(lines[j].y_at(li.c) - li.y_at(li.c)));
        }
        li.plateau = 0.5 * closest;
    }
}

namespace {

struct WeightedMoments {
    double w = 0.0;
    double x = 0.0, y = 0.0;       // weighted means
    double sxx = 0.0, syy = 0.0, sxy = 0.0;  // centered second moments (sums)
};

WeightedMoments collect(const std::vector<SamplePoint>& points, const Posteriors& post, int l) {
    WeightedMoments m;
    for (int v = 0; v < post.n; ++v) {
        double w = post.at(v, l);
        m.w += w;
        m.x += w * points[static_cast<std::size_t>(v)].x;
        m.y += w * points[static_cast<std::size_t>(v)].y;
    }
    if (m.w <= 0.0) return m;
    m.x /= m.w;
    m.y /= m.w;
    for (int v = 0; v < post.n; ++v) {
        double w = post.at(v, l);
        double dx = points[static_cast<std::size_t>(v)].x - m.x;
        double dy = points[static_cast<std::size_t>(v)].y - m.y;
        m.sxx += w * dx * dx;
        m.syy += w * dy * dy;
        m.sxy += w * dx * dy;
    }
    return m;
}

}  // namespace

std::vector<LineModel> mstep_update(const std::vector<SamplePoint>& points,
                                    const Posteriors& post,
                                    const std::vector<LineModel>& previous,
                                    MStepVariant variant) {
    if (static_cast<int>(points.size()) != post.n)
        throw std::invalid_argument("mstep: point/posterior size mismatch");
    if (static_cast<int>(previous.size()) != post.l)
        throw std::invalid_argument("mstep: line/posterior size mismatch");

    std::vector<LineModel> out = previous;
    for (int l = 0; l < post.l; ++l) {
        if (previous[static_cast<std::size_t>(l)].frozen) continue;
        WeightedMoments m = collect(points, post, l);
        if (m.w <= 0.0) throw std::runtime_error("mstep: zero responsibility for a live line");
        LineModel& ln = out[static_cast<std::size_t>(l)];

        if (variant == MStepVariant::Shear) {
            ln.a = m.sxx > 0.0 ? m.sxy / m.sxx : 0.0;
        } else {
            // Principal direction of the weighted scatter; exact under any
            // rotation of the point cloud.
            double phi = 0.5 * std::atan2(2.0 * m.sxy, m.sxx - m.syy);
            const double cap = std::numbers::pi / 2.0 - 1e-9;
            phi = std::clamp(phi, -cap, cap);
            ln.a = std::tan(phi);
        }

        double wb = 0.0, wc = 0.0, wt = 0.0, ws = 0.0;
        for (int v = 0; v < post.n; ++v) {
            double w = post.at(v, l);
            const SamplePoint& p = points[static_cast<std::size_t>(v)];
            wb += w * (p.y - ln.a * p.x);
        }
        ln.b = wb / m.w;

        if (variant == MStepVariant::Shear) {
            ln.c = m.x;
        } else {
            for (int v = 0; v < post.n; ++v) {
                double w = post.at(v, l);
                const SamplePoint& p = points[static_cast<std::size_t>(v)];
                wc += w * (p.x + ln.a * p.y);
            }
            ln.c = wc / m.w;
        }

        for (int v = 0; v < post.n; ++v) {
            double w = post.at(v, l);
            const SamplePoint& p = points[static_cast<std::size_t>(v)];
            double t = p.y - ln.a * p.x - ln.b;
            double s = variant == MStepVariant::Shear ? p.x - ln.c : p.x + ln.a * p.y - ln.c;
            wt += w * t * t;
            ws += w * s * s;
        }
        ln.sigmaT2 = std::max(wt / m.w, kSigmaMin2);
        ln.sigmaS2 = std::max(ws / m.w, kSigmaMin2);
    }
    return out;
}

std::vector<double> line_prior(const Posteriors& post) {
    if (post.n < 1) throw std::invalid_argument("line_prior: no vertices");
    std::vector<double> prior(static_cast<std::size_t>(post.l), 0.0);
    for (int v = 0; v < post.n; ++v)
        for (int l = 0; l < post.l; ++l) prior[static_cast<std::size_t>(l)] += post.at(v, l);
    for (double& p : prior) p /= static_cast<double>(post.n);
    return prior;
}

double partition_zv(const LineModel& line) {
    return 2.0 * std::numbers::pi * std::sqrt(line.sigmaT2 * line.sigmaS2);
}

}  // namespace lineseg
