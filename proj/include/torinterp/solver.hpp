#pragma once

#include <vector>

#include "torinterp/kernels.hpp"
#include "torinterp/transform.hpp"
#include "torinterp/types.hpp"
#include "torinterp/weights.hpp"

namespace torinterp {

struct SolverConfig {
    int max_iterations = 200;
    double residual_tolerance = 1e-10;  // on ||r_l||_2 / ||y||_2
    TransformMode transform = TransformMode::automatic();
    bool record_history = true;
};

enum class SolveStatus { Converged, MaxIterations, Stagnated };

struct SolveResult {
    SpectralVector coefficients;
    std::vector<double> residual_history;  // ||r_l||_2, including l = 0
    std::vector<double> error_history;     // ||f_l - reference||_{W^-1}, if requested
    int iterations_used = 0;
    bool converged = false;
    SolveStatus status = SolveStatus::MaxIterations;
    double weighted_norm = 0.0;  // ||f||_{W^-1} of the returned coefficients
};

/// Conjugate gradient on the damped normal equations of second kind,
/// iterating the coefficient vector directly through A and A^H. On
/// convergence the iterate solves A f = y with minimal ||f||_{W^-1}.
///
/// A vanishing search-direction energy with a residual still above
/// tolerance is reported as stagnation, not as an error. When `reference`
/// is supplied, ||f_l - reference||_{W^-1} is recorded per iteration.
SolveResult cgne(const NodeSet& nodes, const SampleVector& samples,
                 const DampingFactors& weights, const SpectralVector& initial,
                 const SolverConfig& config,
                 const SpectralVector* reference = nullptr);

/// cgne with a zero initial vector.
SolveResult cgne(const NodeSet& nodes, const SampleVector& samples,
                 const DampingFactors& weights, const SolverConfig& config = {},
                 const SpectralVector* reference = nullptr);

/// Conjugate gradient on the weighted least-squares normal equations
/// (CGLS recurrences): minimises ||y - A f||_W over the Krylov space.
/// Stops on the relative residual, on gradient stagnation, or on the
/// iteration budget.
SolveResult cgnr(const NodeSet& nodes, const SampleVector& samples,
                 const Eigen::VectorXd& sample_weights, const FrequencyGrid& grid,
                 const SolverConfig& config = {});

/// ||f||^2_{W^-1} = sum_k |f_k|^2 / w_k.
double weighted_coeff_norm_sq(const SpectralVector& coeffs, const DampingFactors& weights);

/// sqrt of the above.
double weighted_coeff_norm(const SpectralVector& coeffs, const DampingFactors& weights);

/// A-priori CG error bound 2 ((sqrt(L)-sqrt(l))/(sqrt(L)+sqrt(l)))^iter * e0.
double apriori_error_bound(double lambda_min, double lambda_max, int iteration,
                           double initial_error);

/// Dense oracle for the minimum-norm interpolant: f = W A^H K^{-1} y via a
/// direct factorisation of the kernel matrix. Desk scale only.
SpectralVector dense_min_norm_solution(const NodeSet& nodes, const SampleVector& samples,
                                       const DampingFactors& weights,
                                       int dense_cap = kDefaultDenseCap);

}  // namespace torinterp
