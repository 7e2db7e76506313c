// SPDX-License-Identifier: Apache-2.0
//
// aperture-forge: finite-aperture linear array placement design and analysis
// Copyright (C) 2026 The aperture-forge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef APERTURE_FORGE_OPTIMIZER_H
#define APERTURE_FORGE_OPTIMIZER_H

#include <optional>
#include <vector>

#include "aperture_forge/signal_model.hpp"

namespace aperture_forge
{
    // Hermitian Gram matrix A^H A of the sensing codebook (grid_size x
    // grid_size). Its diagonal is M^2 and its trace N * M^2 regardless of the
    // placement, since every codebook column has unit-modulus entries.
    Eigen::MatrixXcd gram_matrix(const Codebook &codebook);

    // Dominant eigenpair of a Gram matrix, plus the runner-up eigenvalue for
    // degeneracy detection (-infinity when the matrix is 1x1).
    struct GramSpectrum
    {
        Eigen::MatrixXcd gram;
        double gamma_max = 0.0;
        Eigen::VectorXcd u_max;
        double gamma_second = 0.0;
    };

    // Largest eigenvalue and unit eigenvector of a Hermitian matrix, with
    // residual ||Q u - gamma u|| <= tol * gamma. Deviation from Hermitian
    // symmetry beyond tol * ||Q||_F throws InvalidMatrixError. The
    // eigenvector phase is fixed so its largest-magnitude entry is real and
    // positive.
    GramSpectrum max_eigpair(const Eigen::MatrixXcd &gram, double tol = 1e-10);

    // Placement objective J(p) = ln gamma_max(p) - ln lambda_bar_sq(p),
    // bundled with the quantities the descent loop reuses. Throws
    // UndefinedObjectiveError when either argument of a logarithm is not
    // positive.
    struct ObjectiveValue
    {
        double objective = 0.0;
        double gamma_max = 0.0;
        double lambda_bar_sq = 0.0;
        Eigen::VectorXcd u_max;
        double gamma_second = 0.0;
    };

    ObjectiveValue objective_value(const ArrayGeometry &geometry, const AngleGrid &grid);
    double objective_J(const ArrayGeometry &geometry, const AngleGrid &grid);

    // Gradient of the effective squared aperture:
    // d lambda_bar_sq / d p_m = (16 pi^2 / M^2) sum_k (p_m - p_k).
    // Components sum to zero.
    std::vector<double> grad_lambda_bar(const ArrayGeometry &geometry);

    // Gradient of the dominant Gram eigenvalue via the eigenvector
    // sensitivity identity d gamma / d p_m = u^H (dQ/dp_m) u. When the top
    // two eigenvalues are separated by less than degenerate_gap * gamma_max
    // the formula is only a subgradient; *degenerate is set when provided
    // and the returned direction is still usable.
    std::vector<double> grad_gamma_max(const Codebook &codebook, const GramSpectrum &spectrum,
                                       bool *degenerate = nullptr, double degenerate_gap = 1e-6);

    enum class UpdateRule
    {
        VelocityMomentum, // v <- beta v - alpha grad;  p <- project(p + v)
        PaperLiteral      // p <- project(beta p - alpha grad)
    };

    struct OptimizerConfig
    {
        double step_alpha = 5e-4;
        double momentum_beta = 0.9;
        int max_iters = 1000;
        std::optional<double> min_spacing; // default: aperture / (M^2 - 1)
        int grid_size = 180;
        UpdateRule update_rule = UpdateRule::VelocityMomentum;
        double convergence_tol = 1e-8;
        int convergence_patience = 10;
        double eig_tol = 1e-10;

        void validate() const; // throws ConfigError
    };

    struct TraceRecord
    {
        int iteration = 0;
        double objective = 0.0;
        double gamma_max = 0.0;
        double lambda_bar_sq = 0.0;
        std::vector<double> positions;
    };

    enum class OptimizerStatus
    {
        Converged,
        MaxIters
    };

    struct ConvergenceTrace
    {
        std::vector<TraceRecord> records; // record 0 is the initial state
        OptimizerStatus status = OptimizerStatus::MaxIters;
        int degenerate_warnings = 0;
        int backtrack_failures = 0;

        const TraceRecord &final_record() const;
    };

    struct OptimizeResult
    {
        ArrayGeometry geometry;
        ConvergenceTrace trace;
    };

    // Projected gradient descent over the interior ports (the first and last
    // port stay pinned at 0 and the aperture). The default velocity-momentum
    // rule is safeguarded: a candidate that raises the objective triggers a
    // velocity reset and step halving (up to 20 halvings), and if no
    // decrease is found the iterate is kept unchanged for that iteration, so
    // the objective never increases along the trace. The paper-literal rule
    // applies its update unguarded.
    OptimizeResult pgd_optimize(const ArrayGeometry &init, const OptimizerConfig &config,
                                const AngleGrid &grid);
}

#endif
