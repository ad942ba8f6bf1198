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

#include "lineseg/mrf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lineseg {

namespace {

// Log marginals are floored here before they feed message ratios, so the
// ratios stay finite even for labels whose belief underflows to zero.
constexpr double kLogFloor = -667.0;

double lse(const double* v, int n) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) m = std::max(m, v[i]);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::exp(v[i] - m);
    return m + std::log(s);
}

double pair_log_potential(const PriorParams& theta, int l, int m) {
    double p = -theta.pairwise[static_cast<std::size_t>(pairwise_feature(l, m))];
    if (!theta.line.empty())
        p -= 0.5 * (theta.line[static_cast<std::size_t>(l)] + theta.line[static_cast<std::size_t>(m)]);
    return p;
}

// The pairwise potential only distinguishes |l - m| in {0, 1, >=2}, which
// lets every per-edge quantity (partition value, marginals, case masses)
// collapse to O(L) band sums instead of L^2 scans.
struct EdgeWork {
    const MrfGraph& g;
    const std::vector<double>& unary;
    int L;
    int N;
    int E;
    std::vector<std::array<int, 2>> ends;
    std::vector<double> cEdge;
    std::vector<std::array<std::vector<double>, 2>>* lamTo = nullptr;
    const PriorParams* theta = nullptr;

    // scratch, one label wide
    mutable std::vector<double> wi, wj;

    EdgeWork(const MrfGraph& g_, const std::vector<double>& unary_, int labels)
        : g(g_), unary(unary_), L(labels), N(g_.vertex_count()), E(g_.edge_count()) {
        ends.reserve(static_cast<std::size_t>(E));
        cEdge.reserve(static_cast<std::size_t>(E));
        for (const auto& [i, j] : g.edges) {
            ends.push_back({i, j});
            cEdge.push_back(g.countingNumbers[static_cast<std::size_t>(i)]);
        }
        wi.resize(static_cast<std::size_t>(L));
        wj.resize(static_cast<std::size_t>(L));
    }

    double unary_at(int v, int l) const { return unary[static_cast<std::size_t>(v) * L + l]; }

    // Shift-normalized exp of (lambda - line weight / 2) / c for one endpoint.
    // Returns the shift; fills w and its total.
    double side_weights(int e, int side, std::vector<double>& w, double* total) const {
        const double c = cEdge[static_cast<std::size_t>(e)];
        const std::vector<double>& lam = (*lamTo)[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)];
        const std::vector<double>& tl = theta->line;
        double shift = -std::numeric_limits<double>::infinity();
        for (int l = 0; l < L; ++l) {
            double a = lam[static_cast<std::size_t>(l)];
            if (!tl.empty()) a -= 0.5 * tl[static_cast<std::size_t>(l)];
            w[static_cast<std::size_t>(l)] = a / c;
            shift = std::max(shift, w[static_cast<std::size_t>(l)]);
        }
        double t = 0.0;
        for (int l = 0; l < L; ++l) {
            w[static_cast<std::size_t>(l)] = std::exp(w[static_cast<std::size_t>(l)] - shift);
            t += w[static_cast<std::size_t>(l)];
        }
        *total = t;
        return shift;
    }

    struct Bands {
        double s0, s1, s2;       // unweighted case masses
        double q0, q1, q2;       // exp(-theta_k / c)
        double z;                // q0 s0 + q1 s1 + q2 s2
        double shift;            // log normalizer offset (both sides)
        double ti, tj;
    };

    Bands bands(int e) const {
        const double c = cEdge[static_cast<std::size_t>(e)];
        Bands b{};
        double ti, tj;
        double si = side_weights(e, 0, wi, &ti);
        double sj = side_weights(e, 1, wj, &tj);
        b.ti = ti;
        b.tj = tj;
        b.shift = si + sj;
        b.s0 = b.s1 = 0.0;
        for (int l = 0; l < L; ++l) {
            double w = wi[static_cast<std::size_t>(l)];
            b.s0 += w * wj[static_cast<std::size_t>(l)];
            double near = 0.0;
            if (l > 0) near += wj[static_cast<std::size_t>(l - 1)];
            if (l + 1 < L) near += wj[static_cast<std::size_t>(l + 1)];
            b.s1 += w * near;
        }
        b.s2 = std::max(0.0, ti * tj - b.s0 - b.s1);
        b.q0 = std::exp(-theta->pairwise[0] / c);
        b.q1 = std::exp(-theta->pairwise[1] / c);
        b.q2 = std::exp(-theta->pairwise[2] / c);
        b.z = b.q0 * b.s0 + b.q1 * b.s1 + b.q2 * b.s2;
        return b;
    }

    double log_z(int e) const {
        Bands b = bands(e);
        return std::log(b.z) + b.shift;
    }

    // Normalized marginal of the edge belief onto one endpoint.
    void marginal(int e, int side, std::vector<double>& out) const {
        Bands b = bands(e);
        const std::vector<double>& mine = side == 0 ? wi : wj;
        const std::vector<double>& other = side == 0 ? wj : wi;
        const double totalOther = side == 0 ? b.tj : b.ti;
        out.resize(static_cast<std::size_t>(L));
        double sum = 0.0;
        for (int l = 0; l < L; ++l) {
            double same = other[static_cast<std::size_t>(l)];
            double near = 0.0;
            if (l > 0) near += other[static_cast<std::size_t>(l - 1)];
            if (l + 1 < L) near += other[static_cast<std::size_t>(l + 1)];
            double far = std::max(0.0, totalOther - same - near);
            double m = mine[static_cast<std::size_t>(l)] * (b.q0 * same + b.q1 * near + b.q2 * far);
            out[static_cast<std::size_t>(l)] = m;
            sum += m;
        }
        for (double& v : out) v /= sum;
    }

    // Case masses and endpoint marginal means, accumulated for the moment
    // averages of the learning step.
    void accumulate_moments(int e, std::array<double, 3>& pair, std::vector<double>& lineAcc,
                            bool wantLine) const {
        Bands b = bands(e);
        pair[0] += b.q0 * b.s0 / b.z;
        pair[1] += b.q1 * b.s1 / b.z;
        pair[2] += b.q2 * b.s2 / b.z;
        if (!wantLine) return;
        for (int side = 0; side < 2; ++side) {
            const std::vector<double>& mine = side == 0 ? wi : wj;
            const std::vector<double>& other = side == 0 ? wj : wi;
            const double totalOther = side == 0 ? b.tj : b.ti;
            for (int l = 0; l < L; ++l) {
                double same = other[static_cast<std::size_t>(l)];
                double near = 0.0;
                if (l > 0) near += other[static_cast<std::size_t>(l - 1)];
                if (l + 1 < L) near += other[static_cast<std::size_t>(l + 1)];
                double far = std::max(0.0, totalOther - same - near);
                double m = mine[static_cast<std::size_t>(l)] * (b.q0 * same + b.q1 * near + b.q2 * far);
                lineAcc[static_cast<std::size_t>(l)] += 0.5 * m / b.z;
            }
        }
    }

    // Full L x L belief matrix for one edge, row = first endpoint label.
    std::vector<double> materialize(int e) const {
        const double c = cEdge[static_cast<std::size_t>(e)];
        const std::vector<double>& li = (*lamTo)[static_cast<std::size_t>(e)][0];
        const std::vector<double>& lj = (*lamTo)[static_cast<std::size_t>(e)][1];
        std::vector<double> logp(static_cast<std::size_t>(L) * L);
        for (int l = 0; l < L; ++l)
            for (int m = 0; m < L; ++m)
                logp[static_cast<std::size_t>(l) * L + m] =
                    (pair_log_potential(*theta, l, m) + li[static_cast<std::size_t>(l)] +
                     lj[static_cast<std::size_t>(m)]) /
                    c;
        double z = lse(logp.data(), L * L);
        std::vector<double> out(logp.size());
        for (std::size_t i = 0; i < logp.size(); ++i) out[i] = std::exp(logp[i] - z);
        return out;
    }
};

struct Reachable {
    bool pairwise[3];
};

Reachable reachable_cases(int labels) {
    return {{true, labels >= 2, labels >= 3}};
}

}  // namespace

std::pair<PriorParams, BeliefState> message_passing(const MrfGraph& region,
                                                    const std::vector<double>& unaryLog,
                                                    int labels, const Moments& moments,
                                                    const PriorParams& thetaInit,
                                                    const MessagePassingConfig& cfg) {
    const int N = region.vertex_count();
    const int L = labels;
    const int E = region.edge_count();
    if (N < 1 || L < 1) throw std::invalid_argument("message_passing: empty problem");
    if (unaryLog.size() != static_cast<std::size_t>(N) * L)
        throw std::invalid_argument("message_passing: unary size mismatch");
    for (double v : unaryLog)
        if (!std::isfinite(v)) throw std::invalid_argument("message_passing: non-finite unary");
    if (!moments.line.empty() && moments.line.size() != static_cast<std::size_t>(L))
        throw std::invalid_argument("message_passing: line moment size mismatch");

    BeliefState st;
    st.n = N;
    st.labels = L;
    st.node.assign(static_cast<std::size_t>(N) * L, 1.0 / L);
    st.logMsgToEdge.assign(static_cast<std::size_t>(E), {std::vector<double>(L, 0.0),
                                                         std::vector<double>(L, 0.0)});
    st.logMsgFromEdge = st.logMsgToEdge;

    PriorParams theta = thetaInit;
    const bool useLine = !moments.line.empty();
    if (useLine && theta.line.size() != static_cast<std::size_t>(L))
        theta.line.assign(static_cast<std::size_t>(L), 0.0);
    if (!useLine) theta.line.clear();

    EdgeWork ew(region, unaryLog, L);
    ew.lamTo = &st.logMsgToEdge;
    ew.theta = &theta;

    // adjacency sorted by neighbor id for a fixed sweep order
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(N));  // (edge, side)
    for (int e = 0; e < E; ++e) {
        adj[static_cast<std::size_t>(ew.ends[static_cast<std::size_t>(e)][0])].push_back({e, 0});
        adj[static_cast<std::size_t>(ew.ends[static_cast<std::size_t>(e)][1])].push_back({e, 1});
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end(), [&](auto lhs, auto rhs) {
            int nl = ew.ends[static_cast<std::size_t>(lhs.first)][lhs.second ^ 1];
            int nr = ew.ends[static_cast<std::size_t>(rhs.first)][rhs.second ^ 1];
            return nl < nr;
        });

    std::vector<double> logNode(static_cast<std::size_t>(N) * L, -std::log(static_cast<double>(L)));
    const Reachable reach = reachable_cases(L);

    auto dual_of = [&](const PriorParams& th) {
        const PriorParams* saved = ew.theta;
        ew.theta = &th;
        double d = 0.0;
        for (int e = 0; e < E; ++e) d -= ew.log_z(e);
        ew.theta = saved;
        std::vector<double> buf(static_cast<std::size_t>(L));
        for (int v = 0; v < N; ++v) {
            double cv = region.countingNumbers[static_cast<std::size_t>(v)];
            for (int l = 0; l < L; ++l) {
                double s = ew.unary_at(v, l);
                for (auto [e, side] : adj[static_cast<std::size_t>(v)])
                    s += st.logMsgToEdge[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)]
                                        [static_cast<std::size_t>(l)];
                buf[static_cast<std::size_t>(l)] = s / cv;
            }
            d -= cv * lse(buf.data(), L);
        }
        for (int k = 0; k < 3; ++k)
            d -= th.pairwise[static_cast<std::size_t>(k)] * E * moments.pairwise[static_cast<std::size_t>(k)];
        if (useLine)
            for (int l = 0; l < L; ++l)
                d -= th.line[static_cast<std::size_t>(l)] * E * moments.line[static_cast<std::size_t>(l)];
        return d;
    };

    auto model_averages = [&](std::array<double, 3>& pair, std::vector<double>& lineAvg) {
        pair = {0.0, 0.0, 0.0};
        lineAvg.assign(useLine ? static_cast<std::size_t>(L) : 0, 0.0);
        for (int e = 0; e < E; ++e) ew.accumulate_moments(e, pair, lineAvg, useLine);
        for (double& p : pair) p /= std::max(1, E);
        for (double& p : lineAvg) p /= std::max(1, E);
    };

    std::vector<double> marg;
    std::array<double, 3> pairAvg{};
    std::vector<double> lineAvg;
    double dual = 0.0;

    for (int sweep = 1; sweep <= cfg.maxSweeps; ++sweep) {
        // -- learning phase: one Armijo ascent step on every theta_k
        if (cfg.learn && E > 0) {
            model_averages(pairAvg, lineAvg);
            std::array<double, 3> dPair{};
            std::vector<double> dLine(useLine ? static_cast<std::size_t>(L) : 0, 0.0);
            double norm2 = 0.0;
            for (int k = 0; k < 3; ++k) {
                if (!reach.pairwise[k]) continue;
                dPair[static_cast<std::size_t>(k)] =
                    pairAvg[static_cast<std::size_t>(k)] - moments.pairwise[static_cast<std::size_t>(k)];
                norm2 += dPair[static_cast<std::size_t>(k)] * dPair[static_cast<std::size_t>(k)];
            }
            if (useLine)
                for (int l = 0; l < L; ++l) {
                    dLine[static_cast<std::size_t>(l)] =
                        lineAvg[static_cast<std::size_t>(l)] - moments.line[static_cast<std::size_t>(l)];
                    norm2 += dLine[static_cast<std::size_t>(l)] * dLine[static_cast<std::size_t>(l)];
                }
            if (norm2 > 0.0) {
                const double before = dual_of(theta);
                const double slope = E * norm2;  // <grad, direction>
                double eta = cfg.armijoInitialStep;
                double after = before;
                PriorParams best = theta;
                for (int bt = 0; bt < 64; ++bt) {
                    PriorParams trial = theta;
                    for (int k = 0; k < 3; ++k)
                        trial.pairwise[static_cast<std::size_t>(k)] += eta * dPair[static_cast<std::size_t>(k)];
                    if (useLine)
                        for (int l = 0; l < L; ++l)
                            trial.line[static_cast<std::size_t>(l)] += eta * dLine[static_cast<std::size_t>(l)];
                    double value = dual_of(trial);
                    if (value >= before + cfg.armijoC1 * eta * slope) {
                        best = trial;
                        after = value;
                        break;
                    }
                    eta *= cfg.armijoBacktrack;
                }
                theta = best;
                ++st.learningSteps;
                st.maxDualDecrease = std::max(st.maxDualDecrease, before - after);
            }
        }

        // -- message sweep: pull, node update, push
        for (int v = 0; v < N; ++v) {
            const auto& inc = adj[static_cast<std::size_t>(v)];
            for (auto [e, side] : inc) {
                ew.marginal(e, side, marg);
                auto& from = st.logMsgFromEdge[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)];
                auto& to = st.logMsgToEdge[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)];
                for (int l = 0; l < L; ++l) {
                    double lm = std::log(std::max(marg[static_cast<std::size_t>(l)], 0.0));
                    lm = std::max(lm, kLogFloor);
                    from[static_cast<std::size_t>(l)] = lm - to[static_cast<std::size_t>(l)];
                }
            }
            const double cv = region.countingNumbers[static_cast<std::size_t>(v)];
            const double denom = cv + static_cast<double>(inc.size());
            double* ln = &logNode[static_cast<std::size_t>(v) * L];
            for (int l = 0; l < L; ++l) {
                double s = ew.unary_at(v, l);
                for (auto [e, side] : inc)
                    s += st.logMsgFromEdge[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)]
                                          [static_cast<std::size_t>(l)];
                ln[l] = s / denom;
            }
            double z = lse(ln, L);
            for (int l = 0; l < L; ++l) {
                ln[l] -= z;
                st.node[static_cast<std::size_t>(v) * L + l] = std::exp(ln[l]);
            }
            for (auto [e, side] : inc) {
                auto& from = st.logMsgFromEdge[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)];
                auto& to = st.logMsgToEdge[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)];
                for (int l = 0; l < L; ++l)
                    to[static_cast<std::size_t>(l)] =
                        std::max(ln[l], kLogFloor) - from[static_cast<std::size_t>(l)];
            }
        }

        // -- convergence check
        double margResid = 0.0;
        for (int e = 0; e < E; ++e) {
            for (int side = 0; side < 2; ++side) {
                ew.marginal(e, side, marg);
                int v = ew.ends[static_cast<std::size_t>(e)][side];
                for (int l = 0; l < L; ++l)
                    margResid = std::max(margResid,
                                         std::abs(marg[static_cast<std::size_t>(l)] -
                                                  st.node[static_cast<std::size_t>(v) * L + l]));
            }
        }
        double momentResid = 0.0;
        if (cfg.learn && E > 0) {
            model_averages(pairAvg, lineAvg);
            for (int k = 0; k < 3; ++k)
                if (reach.pairwise[k])
                    momentResid = std::max(momentResid,
                                           std::abs(pairAvg[static_cast<std::size_t>(k)] -
                                                    moments.pairwise[static_cast<std::size_t>(k)]));
            if (useLine)
                for (int l = 0; l < L; ++l)
                    momentResid = std::max(momentResid,
                                           std::abs(lineAvg[static_cast<std::size_t>(l)] -
                                                    moments.line[static_cast<std::size_t>(l)]));
        }
        st.sweeps = sweep;
        st.maxMarginalResidual = margResid;
        st.maxMomentResidual = momentResid;
        if (cfg.diagnostics) {
            dual = dual_of(theta);
            *cfg.diagnostics << "sweep=" << sweep << " dual=" << dual
                             << " resid=" << std::max(margResid, momentResid) << '\n';
        }
        if (margResid < cfg.tol && momentResid < cfg.tol) {
            st.converged = true;
            break;
        }
    }

    st.finalDual = dual_of(theta);
    st.edge.resize(static_cast<std::size_t>(E));
    for (int e = 0; e < E; ++e) st.edge[static_cast<std::size_t>(e)] = ew.materialize(e);
    return {theta, st};
}

double free_energy(const MrfGraph& region, const std::vector<double>& unaryLog,
                   const BeliefState& state) {
    const int L = state.labels;
    auto xlogx = [](double p) { return p > 0.0 ? p * std::log(p) : 0.0; };
    double f = 0.0;
    for (const auto& eb : state.edge)
        for (double p : eb) f += xlogx(p);
    for (int v = 0; v < state.n; ++v) {
        double cv = region.countingNumbers[static_cast<std::size_t>(v)];
        for (int l = 0; l < L; ++l) {
            double p = state.node_at(v, l);
            f += cv * xlogx(p);
            f += unaryLog[static_cast<std::size_t>(v) * L + l] * p;
        }
    }
    return f;
}

double dual_value(const MrfGraph& region, const std::vector<double>& unaryLog,
                  const PriorParams& theta, const BeliefState& state, const Moments& moments) {
    const int L = state.labels;
    const int E = region.edge_count();
    EdgeWork ew(region, unaryLog, L);
    auto lamTo = state.logMsgToEdge;  // EdgeWork mutates nothing, but needs the store
    ew.lamTo = &lamTo;
    ew.theta = &theta;
    double d = 0.0;
    for (int e = 0; e < E; ++e) d -= ew.log_z(e);
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(state.n));
    for (int e = 0; e < E; ++e) {
        adj[static_cast<std::size_t>(ew.ends[static_cast<std::size_t>(e)][0])].push_back({e, 0});
        adj[static_cast<std::size_t>(ew.ends[static_cast<std::size_t>(e)][1])].push_back({e, 1});
    }
    std::vector<double> buf(static_cast<std::size_t>(L));
    for (int v = 0; v < state.n; ++v) {
        double cv = region.countingNumbers[static_cast<std::size_t>(v)];
        for (int l = 0; l < L; ++l) {
            double s = unaryLog[static_cast<std::size_t>(v) * L + l];
            for (auto [e, side] : adj[static_cast<std::size_t>(v)])
                s += lamTo[static_cast<std::size_t>(e)][static_cast<std::size_t>(side)][static_cast<std::size_t>(l)];
            buf[static_cast<std::size_t>(l)] = s / cv;
        }
        d -= cv * lse(buf.data(), L);
    }
    for (int k = 0; k < 3; ++k)
        d -= theta.pairwise[static_cast<std::size_t>(k)] * E * moments.pairwise[static_cast<std::size_t>(k)];
    if (!theta.line.empty() && !moments.line.empty())
        for (int l = 0; l < L; ++l)
            d -= theta.line[static_cast<std::size_t>(l)] * E * moments.line[static_cast<std::size_t>(l)];
    return d;
}

MomentAverages moment_averages(const MrfGraph& region, const BeliefState& state) {
    const int L = state.labels;
    MomentAverages out;
    out.line.assign(static_cast<std::size_t>(L), 0.0);
    const int E = region.edge_count();
    for (int e = 0; e < E; ++e) {
        const auto& eb = state.edge[static_cast<std::size_t>(e)];
        for (int l = 0; l < L; ++l)
            for (int m = 0; m < L; ++m) {
                double p = eb[static_cast<std::size_t>(l) * L + m];
                out.pairwise[static_cast<std::size_t>(pairwise_feature(l, m))] += p;
                out.line[static_cast<std::size_t>(l)] += 0.5 * p;
                out.line[static_cast<std::size_t>(m)] += 0.5 * p;
            }
    }
    for (double& p : out.pairwise) p /= std::max(1, E);
    for (double& p : out.line) p /= std::max(1, E);
    return out;
}

ExactMarginals brute_force_marginals(const MrfGraph& region, const std::vector<double>& unaryLog,
                                     int labels, const PriorParams& theta) {
    const int N = region.vertex_count();
    const int L = labels;
    double states = std::pow(static_cast<double>(L), N);
    if (states > 1e6) throw std::runtime_error("brute_force_marginals: state space too large");
    const int total = static_cast<int>(states + 0.5);

    std::vector<int> config(static_cast<std::size_t>(N), 0);
    std::vector<double> logp(static_cast<std::size_t>(total));
    for (int s = 0; s < total; ++s) {
        int rem = s;
        for (int v = 0; v < N; ++v) {
            config[static_cast<std::size_t>(v)] = rem % L;
            rem /= L;
        }
        double lp = 0.0;
        for (int v = 0; v < N; ++v)
            lp += unaryLog[static_cast<std::size_t>(v) * L + config[static_cast<std::size_t>(v)]];
        for (const auto& [i, j] : region.edges)
            lp += pair_log_potential(theta, config[static_cast<std::size_t>(i)],
                                     config[static_cast<std::size_t>(j)]);
        logp[static_cast<std::size_t>(s)] = lp;
    }
    double z = lse(logp.data(), total);

    ExactMarginals out;
    out.node.assign(static_cast<std::size_t>(N) * L, 0.0);
    out.edge.assign(region.edges.size(), std::vector<double>(static_cast<std::size_t>(L) * L, 0.0));
    for (int s = 0; s < total; ++s) {
        double p = std::exp(logp[static_cast<std::size_t>(s)] - z);
        int rem = s;
        for (int v = 0; v < N; ++v) {
            config[static_cast<std::size_t>(v)] = rem % L;
            rem /= L;
        }
        for (int v = 0; v < N; ++v)
            out.node[static_cast<std::size_t>(v) * L + config[static_cast<std::size_t>(v)]] += p;
        for (std::size_t e = 0; e < region.edges.size(); ++e) {
            int li = config[static_cast<std::size_t>(region.edges[e].first)];
            int lj = config[static_cast<std::size_t>(region.edges[e].second)];
            out.edge[e][static_cast<std::size_t>(li) * L + lj] += p;
        }
    }
    return out;
}

}  // namespace lineseg
