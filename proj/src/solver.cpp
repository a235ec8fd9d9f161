#include "torinterp/solver.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace torinterp {

namespace {

double weighted_error(const SpectralVector& f, const SpectralVector& ref,
                      const Eigen::VectorXd& diag) {
    return std::sqrt(
        ((f.coeffs - ref.coeffs).cwiseAbs2().array() / diag.array()).sum());
}

}  // namespace

SolveResult cgne(const NodeSet& nodes, const SampleVector& samples,
                 const DampingFactors& weights, const SpectralVector& initial,
                 const SolverConfig& config, const SpectralVector* reference) {
    const FrequencyGrid grid = weights.grid();
    if (initial.grid != grid)
        throw InvalidArgument("cgne: initial vector grid does not match weights");
    if (nodes.dim() != grid.dim()) throw InvalidArgument("cgne: dimension mismatch");
    if (samples.size() != nodes.size())
        throw InvalidArgument("cgne: sample count does not match node count");
    if (config.residual_tolerance < 0.0)
        throw InvalidArgument("cgne: tolerance must be nonnegative");

    const FourierOperator op(nodes, grid, config.transform);
    const Eigen::VectorXd diag = weights.diagonal();
    const double y_norm = samples.norm();
    const double target = config.residual_tolerance * y_norm;

    SolveResult result{SpectralVector(grid), {}, {}, 0, false,
                       SolveStatus::MaxIterations, 0.0};
    result.coefficients = initial;

    SampleVector r = samples - op.forward(result.coefficients);
    SpectralVector p = op.adjoint(r);
    double rho = r.squaredNorm();
    if (config.record_history) result.residual_history.push_back(std::sqrt(rho));
    if (reference)
        result.error_history.push_back(
            weighted_error(result.coefficients, *reference, diag));

    while (true) {
        if (std::sqrt(rho) <= target) {
            result.converged = true;
            result.status = SolveStatus::Converged;
            break;
        }
        if (result.iterations_used >= config.max_iterations) {
            result.status = SolveStatus::MaxIterations;
            break;
        }
        // A collapsed search direction with the residual still above
        // tolerance means the remaining residual is orthogonal to the range
        // of A (singular kernel matrix): stagnation, not an error.
        if (p.coeffs.norm() <=
            1e-12 * std::sqrt(static_cast<double>(grid.size())) * std::sqrt(rho)) {
            result.status = SolveStatus::Stagnated;
            break;
        }
        Eigen::VectorXcd wp = p.coeffs.cwiseProduct(diag.cast<Complex>());
        const double denom = (p.coeffs.cwiseAbs2().array() * diag.array()).sum();
        const double breakdown = std::numeric_limits<double>::epsilon() *
                                 p.coeffs.norm() * wp.norm();
        if (denom <= breakdown) {
            result.status = SolveStatus::Stagnated;
            break;
        }
        const double alpha = rho / denom;
        result.coefficients.coeffs += alpha * wp;
        r -= alpha * op.forward(SpectralVector(grid, wp));
        const double rho_next = r.squaredNorm();
        const double beta = rho_next / rho;
        SpectralVector adj = op.adjoint(r);
        p.coeffs = beta * p.coeffs + adj.coeffs;
        rho = rho_next;
        ++result.iterations_used;
        if (config.record_history) result.residual_history.push_back(std::sqrt(rho));
        if (reference)
            result.error_history.push_back(
                weighted_error(result.coefficients, *reference, diag));
    }

    result.weighted_norm = weighted_coeff_norm(result.coefficients, weights);
    return result;
}

SolveResult cgne(const NodeSet& nodes, const SampleVector& samples,
                 const DampingFactors& weights, const SolverConfig& config,
                 const SpectralVector* reference) {
    return cgne(nodes, samples, weights, SpectralVector(weights.grid()), config,
                reference);
}

SolveResult cgnr(const NodeSet& nodes, const SampleVector& samples,
                 const Eigen::VectorXd& sample_weights, const FrequencyGrid& grid,
                 const SolverConfig& config) {
    if (nodes.dim() != grid.dim()) throw InvalidArgument("cgnr: dimension mismatch");
    if (samples.size() != nodes.size())
        throw InvalidArgument("cgnr: sample count does not match node count");
    if (sample_weights.size() != nodes.size())
        throw InvalidArgument("cgnr: weight count does not match node count");
    if ((sample_weights.array() <= 0.0).any())
        throw InvalidArgument("cgnr: sample weights must be positive");

    const FourierOperator op(nodes, grid, config.transform);
    const double y_norm = samples.norm();
    const double target = config.residual_tolerance * y_norm;

    SolveResult result{SpectralVector(grid), {}, {}, 0, false,
                       SolveStatus::MaxIterations, 0.0};

    const Eigen::VectorXcd w_complex = sample_weights.cast<Complex>();
    SampleVector r = samples;
    SpectralVector s = op.adjoint(r.cwiseProduct(w_complex));
    SpectralVector p = s;
    double gamma = s.coeffs.squaredNorm();
    const double gamma0 = gamma;
    if (config.record_history) result.residual_history.push_back(r.norm());

    while (true) {
        if (r.norm() <= target) {
            result.converged = true;
            result.status = SolveStatus::Converged;
            break;
        }
        // Gradient of the weighted objective vanished: the minimiser of the
        // least-squares problem is reached even though a residual remains.
        if (gamma <= gamma0 * 1e-28 || gamma == 0.0) {
            result.converged = true;
            result.status = SolveStatus::Converged;
            break;
        }
        if (result.iterations_used >= config.max_iterations) {
            result.status = SolveStatus::MaxIterations;
            break;
        }
        SampleVector q = op.forward(p);
        const double denom = (q.cwiseAbs2().array() * sample_weights.array()).sum();
        const double breakdown =
            std::numeric_limits<double>::epsilon() * q.squaredNorm();
        if (denom <= breakdown) {
            result.status = SolveStatus::Stagnated;
            break;
        }
        const double alpha = gamma / denom;
        result.coefficients.coeffs += alpha * p.coeffs;
        r -= alpha * q;
        s = op.adjoint(r.cwiseProduct(w_complex));
        const double gamma_next = s.coeffs.squaredNorm();
        const double beta = gamma_next / gamma;
        p.coeffs = s.coeffs + beta * p.coeffs;
        gamma = gamma_next;
        ++result.iterations_used;
        if (config.record_history) result.residual_history.push_back(r.norm());
    }
    return result;
}

double weighted_coeff_norm_sq(const SpectralVector& coeffs, const DampingFactors& weights) {
    if (coeffs.grid != weights.grid())
        throw InvalidArgument("weighted_coeff_norm: grid mismatch");
    const Eigen::VectorXd diag = weights.diagonal();
    return (coeffs.coeffs.cwiseAbs2().array() / diag.array()).sum();
}

double weighted_coeff_norm(const SpectralVector& coeffs, const DampingFactors& weights) {
    return std::sqrt(weighted_coeff_norm_sq(coeffs, weights));
}

double apriori_error_bound(double lambda_min, double lambda_max, int iteration,
                           double initial_error) {
    if (!(lambda_min > 0.0) || lambda_max < lambda_min)
        throw InvalidArgument("apriori_error_bound: need 0 < lambda <= Lambda");
    if (iteration < 0) throw InvalidArgument("apriori_error_bound: iteration < 0");
    const double contraction = (std::sqrt(lambda_max) - std::sqrt(lambda_min)) /
                               (std::sqrt(lambda_max) + std::sqrt(lambda_min));
    return 2.0 * std::pow(contraction, iteration) * initial_error;
}

SpectralVector dense_min_norm_solution(const NodeSet& nodes, const SampleVector& samples,
                                       const DampingFactors& weights, int dense_cap) {
    const KernelMatrix k = kernel_matrix(nodes, weights, dense_cap);
    Eigen::LDLT<Eigen::MatrixXcd> factor(k.entries);
    if (factor.info() != Eigen::Success)
        throw NumericError("dense_min_norm_solution: kernel matrix factorisation failed");
    const Eigen::VectorXcd tilde = factor.solve(samples);
    SpectralVector f = ndft_adjoint(tilde, nodes, weights.grid());
    f.coeffs.array() *= weights.diagonal().array().cast<Complex>();
    return f;
}

}  // namespace torinterp
