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

#ifndef LINESEG_MRF_HPP
#define LINESEG_MRF_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "lineseg/graph.hpp"

namespace lineseg {

// Learned parameters of the label prior: three pairwise weights (same label,
// adjacent labels, distant labels) plus an optional per-line weight vector.
struct PriorParams {
    std::array<double, 3> pairwise{0.0, 0.0, 0.0};
    std::vector<double> line;  // empty = line-probability feature disabled
};

// Empirical targets for moment matching.  pairwise entries are frequencies of
// the three label cases (non-negative, sum 1); line entries are the target
// line probabilities and must have one entry per label when present.
struct Moments {
    std::array<double, 3> pairwise{0.90, 0.09, 0.01};
    std::vector<double> line;
};

// Case index of the pairwise feature: 0 same label, 1 adjacent, 2 distant.
inline int pairwise_feature(int hi, int hj) {
    int d = hi > hj ? hi - hj : hj - hi;
    return d == 0 ? 0 : (d == 1 ? 1 : 2);
}

struct MessagePassingConfig {
    int maxSweeps = 200;
    double tol = 1e-6;
    bool learn = true;  // run the moment-matching gradient phase
    double armijoC1 = 1e-4;
    double armijoBacktrack = 0.5;
    double armijoInitialStep = 1.0;
    std::ostream* diagnostics = nullptr;  // one line per sweep when set
};

// Approximate marginals plus the message store.  Node beliefs are linear and
// row-stochastic; messages live in the log domain (message = exp(lambda)).
// Edge beliefs are materialized on return; during the sweeps they exist
// implicitly through (theta, lambda).
struct BeliefState {
    int n = 0;
    int labels = 0;
    std::vector<double> node;                                    // n x labels, row-major
    std::vector<std::vector<double>> edge;                        // per edge, labels^2
    std::vector<std::array<std::vector<double>, 2>> logMsgToEdge;  // lambda_{v->u}
    std::vector<std::array<std::vector<double>, 2>> logMsgFromEdge;

    bool converged = false;
    int sweeps = 0;
    double maxMarginalResidual = 0.0;
    double maxMomentResidual = 0.0;
    double finalDual = 0.0;
    // Learning-step audit: worst per-step decrease of the dual (0 = monotone).
    double maxDualDecrease = 0.0;
    int learningSteps = 0;

    double node_at(int v, int l) const { return node[static_cast<std::size_t>(v) * labels + l]; }
};

// Block coordinate ascent on the dual of the constrained free-energy
// minimization.  Per sweep: one Armijo gradient step on every learned
// parameter, then for each vertex a pull/update/push pass over its incident
// edges.  Runs until moment and marginalization residuals drop under
// cfg.tol or maxSweeps is hit (state.converged reports which).
//
// unaryLog is the n x labels matrix of summed log feature values g(v, l).
std::pair<PriorParams, BeliefState> message_passing(const MrfGraph& region,
                                                    const std::vector<double>& unaryLog,
                                                    int labels, const Moments& moments,
                                                    const PriorParams& thetaInit,
                                                    const MessagePassingConfig& cfg = {});

// Entropy terms plus the unary energy term of the beliefs (0 log 0 = 0).
double free_energy(const MrfGraph& region, const std::vector<double>& unaryLog,
                   const BeliefState& state);

// Dual objective for the current (theta, lambda): -sum_u log Z_u
// - sum_v c_v log Z_v - sum_k theta_k M_k with M_k = |E| mu_k.
double dual_value(const MrfGraph& region, const std::vector<double>& unaryLog,
                  const PriorParams& theta, const BeliefState& state, const Moments& moments);

// Model moment averages under the state's edge beliefs: per-edge mean case
// frequencies and (when theta.line is in play) per-(edge, endpoint) label
// marginal means.
struct MomentAverages {
    std::array<double, 3> pairwise{0.0, 0.0, 0.0};
    std::vector<double> line;
};
MomentAverages moment_averages(const MrfGraph& region, const BeliefState& state);

// Exact marginals of the joint p(h) proportional to
// exp{sum_v g(v, h_v) - sum_u sum_k theta_k f_k(h_u)} by full enumeration.
// Test oracle; refuses state spaces above 10^6 configurations.
struct ExactMarginals {
    std::vector<double> node;                // n x labels
    std::vector<std::vector<double>> edge;   // per edge, labels^2
};
ExactMarginals brute_force_marginals(const MrfGraph& region, const std::vector<double>& unaryLog,
                                     int labels, const PriorParams& theta);

}  // namespace lineseg

#endif
