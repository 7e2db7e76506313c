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

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "aperture_forge/errors.hpp"
#include "aperture_forge/optimizer.hpp"

namespace aperture_forge
{

Eigen::MatrixXcd gram_matrix(const Codebook &codebook)
{
    const Eigen::MatrixXcd &a = codebook.columns;

    // Rank update keeps the result exactly Hermitian.
    Eigen::Index n_grid = a.cols();
    Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(n_grid, n_grid);
    lower.selfadjointView<Eigen::Lower>().rankUpdate(a.adjoint(), 1.0);
    Eigen::MatrixXcd gram = lower.selfadjointView<Eigen::Lower>();

    // Unit-modulus columns make the diagonal exactly M^2; pin it against
    // rounding so downstream trace identities hold to FP accuracy.
    double m_sq = static_cast<double>(codebook.geometry.port_count());
    m_sq *= m_sq;
    for (Eigen::Index n = 0; n < gram.rows(); n++)
        gram(n, n) = m_sq;

    return gram;
}

GramSpectrum max_eigpair(const Eigen::MatrixXcd &gram, double tol)
{
    if (gram.rows() != gram.cols() || gram.rows() < 1)
        throw InvalidMatrixError("max_eigpair: matrix must be square and non-empty");

    double scale = gram.norm();
    if ((gram - gram.adjoint()).norm() > tol * std::max(1.0, scale))
        throw InvalidMatrixError("max_eigpair: matrix is not Hermitian within tolerance");

    GramSpectrum spectrum;
    spectrum.gram = gram;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw InvalidMatrixError("max_eigpair: eigendecomposition failed");

    Eigen::Index n = gram.rows();
    spectrum.gamma_max = solver.eigenvalues()(n - 1); // ascending order
    spectrum.u_max = solver.eigenvectors().col(n - 1);
    spectrum.gamma_second = (n > 1) ? solver.eigenvalues()(n - 2)
                                    : -std::numeric_limits<double>::infinity();

    // Deterministic phase: rotate so the largest-magnitude entry is real
    // and positive.
    Eigen::Index imax = 0;
    spectrum.u_max.cwiseAbs().maxCoeff(&imax);
    std::complex<double> pivot = spectrum.u_max(imax);
    if (std::abs(pivot) > 0.0)
        spectrum.u_max *= std::conj(pivot) / std::abs(pivot);

    double residual = (gram * spectrum.u_max - spectrum.gamma_max * spectrum.u_max).norm();
    if (spectrum.gamma_max > 0.0 && residual > std::max(tol, 1e-9) * spectrum.gamma_max)
        throw InvalidMatrixError("max_eigpair: eigenpair residual exceeds tolerance");

    return spectrum;
}

ObjectiveValue objective_value(const ArrayGeometry &geometry, const AngleGrid &grid)
{
    Codebook codebook = build_codebook(geometry, grid);
    GramSpectrum spectrum = max_eigpair(gram_matrix(codebook));

    ObjectiveValue value;
    value.gamma_max = spectrum.gamma_max;
    value.u_max = std::move(spectrum.u_max);
    value.gamma_second = spectrum.gamma_second;
    value.lambda_bar_sq = effective_squared_aperture(geometry.positions);

    if (value.gamma_max <= 0.0)
        throw UndefinedObjectiveError("objective_value: gamma_max is not positive");
    if (value.lambda_bar_sq <= 0.0)
        throw UndefinedObjectiveError("objective_value: effective squared aperture is not positive "
                                      "(coincident ports)");

    value.objective = std::log(value.gamma_max) - std::log(value.lambda_bar_sq);
    return value;
}

double objective_J(const ArrayGeometry &geometry, const AngleGrid &grid)
{
    return objective_value(geometry, grid).objective;
}

std::vector<double> grad_lambda_bar(const ArrayGeometry &geometry)
{
    const std::vector<double> &p = geometry.positions;
    size_t m_cnt = p.size();

    double sum = 0.0;
    for (double pm : p)
        sum += pm;

    double m_d = static_cast<double>(m_cnt);
    double coeff = 16.0 * std::numbers::pi * std::numbers::pi / (m_d * m_d);

    std::vector<double> grad(m_cnt);
    for (size_t m = 0; m < m_cnt; m++)
        grad[m] = coeff * (m_d * p[m] - sum); // sum_k (p_m - p_k)

    return grad;
}

std::vector<double> grad_gamma_max(const Codebook &codebook, const GramSpectrum &spectrum,
                                   bool *degenerate, double degenerate_gap)
{
    const Eigen::MatrixXcd &a = codebook.columns;
    Eigen::Index n_grid = a.cols();
    int m_cnt = codebook.geometry.port_count();

    if (spectrum.u_max.size() != n_grid)
        throw InvalidMatrixError("grad_gamma_max: eigenvector length does not match the codebook");

    if (degenerate != nullptr)
        *degenerate = std::isfinite(spectrum.gamma_second) &&
                      (spectrum.gamma_max - spectrum.gamma_second) <
                          degenerate_gap * spectrum.gamma_max;

    // d gamma / d p_m = 2 Re{ w^H (dA/dp_m) u } with w = A u. Each column's
    // derivative only rescales entries whose flat index involves port m, so
    // the full contraction reduces to two length-M sums with
    // z = A (u .* (-j 2 pi cos(angles))).
    Eigen::VectorXcd w = a * spectrum.u_max;

    Eigen::VectorXcd scaled = spectrum.u_max;
    for (Eigen::Index k = 0; k < n_grid; k++)
        scaled(k) *= std::complex<double>(0.0, -kTwoPi * std::cos(codebook.grid.angles[static_cast<size_t>(k)]));
    Eigen::VectorXcd z = a * scaled;

    std::vector<double> grad(static_cast<size_t>(m_cnt));
    for (int m = 0; m < m_cnt; m++)
    {
        std::complex<double> pos_part(0.0, 0.0); // entries where port m is the u index
        std::complex<double> neg_part(0.0, 0.0); // entries where port m is the v index
        for (int v = 0; v < m_cnt; v++)
        {
            Eigen::Index i = static_cast<Eigen::Index>(v) * m_cnt + m;
            pos_part += std::conj(w(i)) * z(i);
        }
        for (int u = 0; u < m_cnt; u++)
        {
            Eigen::Index i = static_cast<Eigen::Index>(m) * m_cnt + u;
            neg_part += std::conj(w(i)) * z(i);
        }
        grad[static_cast<size_t>(m)] = 2.0 * (pos_part - neg_part).real();
    }

    return grad;
}

void OptimizerConfig::validate() const
{
    if (!(step_alpha > 0.0))
        throw ConfigError("OptimizerConfig: step_alpha must be positive");
    if (momentum_beta < 0.0 || momentum_beta >= 1.0)
        throw ConfigError("OptimizerConfig: momentum_beta must lie in [0, 1)");
    if (max_iters < 1)
        throw ConfigError("OptimizerConfig: max_iters must be >= 1");
    if (min_spacing && *min_spacing < 0.0)
        throw ConfigError("OptimizerConfig: min_spacing must be non-negative");
    if (grid_size < 1)
        throw ConfigError("OptimizerConfig: grid_size must be >= 1");
    if (!(convergence_tol > 0.0))
        throw ConfigError("OptimizerConfig: convergence_tol must be positive");
    if (convergence_patience < 1)
        throw ConfigError("OptimizerConfig: convergence_patience must be >= 1");
    if (!(eig_tol > 0.0))
        throw ConfigError("OptimizerConfig: eig_tol must be positive");
}

const TraceRecord &ConvergenceTrace::final_record() const
{
    if (records.empty())
        throw std::logic_error("ConvergenceTrace: empty trace");
    return records.back();
}

// Internal per-placement evaluation bundle for the descent loop.
namespace
{
    struct Eval
    {
        ArrayGeometry geometry;
        Codebook codebook;
        ObjectiveValue value;
    };

    Eval evaluate(ArrayGeometry geometry, const AngleGrid &grid, double eig_tol)
    {
        Codebook codebook = build_codebook(geometry, grid);
        GramSpectrum spectrum = max_eigpair(gram_matrix(codebook), eig_tol);

        ObjectiveValue value;
        value.gamma_max = spectrum.gamma_max;
        value.u_max = std::move(spectrum.u_max);
        value.gamma_second = spectrum.gamma_second;
        value.lambda_bar_sq = effective_squared_aperture(geometry.positions);

        if (value.gamma_max <= 0.0 || value.lambda_bar_sq <= 0.0)
            throw UndefinedObjectiveError("pgd_optimize: objective undefined at an iterate");

        value.objective = std::log(value.gamma_max) - std::log(value.lambda_bar_sq);
        return Eval{std::move(geometry), std::move(codebook), std::move(value)};
    }

    TraceRecord make_record(int iteration, const Eval &eval)
    {
        TraceRecord rec;
        rec.iteration = iteration;
        rec.objective = eval.value.objective;
        rec.gamma_max = eval.value.gamma_max;
        rec.lambda_bar_sq = eval.value.lambda_bar_sq;
        rec.positions = eval.geometry.positions;
        return rec;
    }
}

OptimizeResult pgd_optimize(const ArrayGeometry &init, const OptimizerConfig &config,
                            const AngleGrid &grid)
{
    config.validate();
    if (grid.size() != static_cast<int>(grid.angles.size()))
        throw ConfigError("pgd_optimize: malformed angle grid");

    int m_cnt = init.port_count();
    double aperture = init.aperture;
    double d_min = config.min_spacing ? *config.min_spacing
                                      : default_min_spacing(m_cnt, aperture);
    if (static_cast<double>(m_cnt - 1) * d_min > aperture)
        throw InfeasibleConstraintsError("pgd_optimize: min spacing exceeds what the aperture can hold");

    Eval cur = evaluate(init, grid, config.eig_tol);

    ConvergenceTrace trace;
    trace.records.reserve(static_cast<size_t>(config.max_iters) + 1);
    trace.records.push_back(make_record(0, cur));

    // With both edges pinned there is nothing to move for M = 2.
    if (m_cnt <= 2)
    {
        trace.status = OptimizerStatus::Converged;
        return OptimizeResult{std::move(cur.geometry), std::move(trace)};
    }

    std::vector<double> velocity(static_cast<size_t>(m_cnt), 0.0);
    int streak = 0;

    for (int iter = 1; iter <= config.max_iters; iter++)
    {
        GramSpectrum spectrum;
        spectrum.gamma_max = cur.value.gamma_max;
        spectrum.u_max = cur.value.u_max;
        spectrum.gamma_second = cur.value.gamma_second;

        bool degenerate = false;
        std::vector<double> grad = grad_gamma_max(cur.codebook, spectrum, &degenerate);
        if (degenerate)
            trace.degenerate_warnings++;

        std::vector<double> grad_lam = grad_lambda_bar(cur.geometry);
        for (int m = 0; m < m_cnt; m++)
            grad[static_cast<size_t>(m)] = grad[static_cast<size_t>(m)] / cur.value.gamma_max -
                                           grad_lam[static_cast<size_t>(m)] / cur.value.lambda_bar_sq;

        // Only interior ports move; the edges stay pinned.
        grad.front() = 0.0;
        grad.back() = 0.0;

        double prev_objective = cur.value.objective;

        if (config.update_rule == UpdateRule::PaperLiteral)
        {
            // Literal update: positions themselves are scaled by beta. No
            // safeguard — this rule exists to expose its own behavior.
            std::vector<double> raw = cur.geometry.positions;
            for (int m = 1; m + 1 < m_cnt; m++)
                raw[static_cast<size_t>(m)] = config.momentum_beta * raw[static_cast<size_t>(m)] -
                                              config.step_alpha * grad[static_cast<size_t>(m)];
            cur = evaluate(project_feasible(raw, aperture, d_min), grid, config.eig_tol);
        }
        else
        {
            for (int m = 0; m < m_cnt; m++)
                velocity[static_cast<size_t>(m)] = config.momentum_beta * velocity[static_cast<size_t>(m)] -
                                                   config.step_alpha * grad[static_cast<size_t>(m)];

            std::vector<double> raw = cur.geometry.positions;
            for (int m = 0; m < m_cnt; m++)
                raw[static_cast<size_t>(m)] += velocity[static_cast<size_t>(m)];

            Eval cand = evaluate(project_feasible(raw, aperture, d_min), grid, config.eig_tol);
            if (cand.value.objective <= cur.value.objective)
            {
                cur = std::move(cand);
            }
            else
            {
                // Momentum overshot: drop the velocity and backtrack along
                // the bare gradient until the objective stops increasing.
                std::fill(velocity.begin(), velocity.end(), 0.0);
                double step = 0.5 * config.step_alpha;
                bool accepted = false;
                for (int k = 0; k < 20 && !accepted; k++)
                {
                    raw = cur.geometry.positions;
                    for (int m = 0; m < m_cnt; m++)
                        raw[static_cast<size_t>(m)] -= step * grad[static_cast<size_t>(m)];
                    Eval retry = evaluate(project_feasible(raw, aperture, d_min), grid, config.eig_tol);
                    if (retry.value.objective <= cur.value.objective)
                    {
                        cur = std::move(retry);
                        accepted = true;
                    }
                    step *= 0.5;
                }
                if (!accepted)
                    trace.backtrack_failures++; // iterate kept unchanged
            }
        }

        trace.records.push_back(make_record(iter, cur));

        if (std::abs(cur.value.objective - prev_objective) < config.convergence_tol)
            streak++;
        else
            streak = 0;

        if (streak >= config.convergence_patience)
        {
            trace.status = OptimizerStatus::Converged;
            return OptimizeResult{std::move(cur.geometry), std::move(trace)};
        }
    }

    trace.status = OptimizerStatus::MaxIters;
    return OptimizeResult{std::move(cur.geometry), std::move(trace)};
}

}
