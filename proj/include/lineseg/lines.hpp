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

#ifndef LINESEG_LINES_HPP
#define LINESEG_LINES_HPP

#include <vector>

#include "lineseg/graph.hpp"

namespace lineseg {

// Variance floor: exact fits would otherwise produce zero variances and
// unbounded likelihood weights.
constexpr double kSigmaMin2 = 1.0;

// One regression line segment: y = a x + b, horizontal extent centered at c.
// sigmaT2 is the vertical (residual) variance, sigmaS2 the horizontal one.
// plateau is the half interline space used to flatten the vertical penalty.
struct LineModel {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double sigmaT2 = kSigmaMin2;
    double sigmaS2 = kSigmaMin2;
    double prior = 1.0;
    double plateau = 0.0;
    bool frozen = false;  // dead line: parameters held, prior forced to zero

    double y_at(double x) const { return a * x + b; }
};

// Row-stochastic N x L matrix of per-vertex label posteriors.
struct Posteriors {
    int n = 0;
    int l = 0;
    std::vector<double> data;

    Posteriors() = default;
    Posteriors(int n_, int l_) : n(n_), l(l_), data(static_cast<std::size_t>(n_) * l_, 0.0) {}

    double at(int v, int k) const { return data[static_cast<std::size_t>(v) * l + k]; }
    double& at(int v, int k) { return data[static_cast<std::size_t>(v) * l + k]; }
};

enum class MStepVariant { Shear, RotationInvariant };

// Log-potential of the flattened local fitting feature.  Inside the plateau
// (vertical residue within r * plateau) only the horizontal term counts.
// Always <= 0.
double local_fitting(const LineModel& line, const SamplePoint& point, double r);

// Un-flattened log-likelihood exponent; the plateau ignored.  Used by the
// oracle-facing math (partition function, expectation objective).
double log_likelihood_exponent(const LineModel& line, double x, double y);

// Half the minimum vertical distance to any other line, evaluated at the
// line's own center; a lone line falls back to 2 * sqrt(sigmaT2).
void compute_plateau(std::vector<LineModel>& lines);

// Closed-form maximization of the expected complete-data objective, one line
// at a time, weights taken from the posterior column.  Parameter order
// matters: b uses the new a, sigmaT2 the new (a, b), sigmaS2 the new c.
// Frozen lines are left untouched.  Throws std::runtime_error if a live line
// has zero total responsibility.
std::vector<LineModel> mstep_update(const std::vector<SamplePoint>& points,
                                    const Posteriors& post,
                                    const std::vector<LineModel>& previous,
                                    MStepVariant variant);

// Mean posterior per line; sums to 1.
std::vector<double> line_prior(const Posteriors& post);

// Partition function of one line's likelihood model: 2 pi sqrt(sigmaT2 sigmaS2).
double partition_zv(const LineModel& line);

}  // namespace lineseg

#endif
