#include "torinterp/stability.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace torinterp {

const char* provenance_name(BoundProvenance p) {
    switch (p) {
        case BoundProvenance::ThmUnivariate: return "thm-univariate";
        case BoundProvenance::ThmMultivariate: return "thm-multivariate";
        case BoundProvenance::CorJitter: return "cor-jitter";
        case BoundProvenance::CorSpline: return "cor-spline";
        case BoundProvenance::ThmEquispaced: return "thm-equispaced";
        case BoundProvenance::CorDirichletFejer: return "cor-dirichlet-fejer";
        case BoundProvenance::GershgorinMatrix: return "gershgorin-matrix";
        case BoundProvenance::DenseOracle: return "dense-oracle";
    }
    return "unknown";
}

EigenBounds separated_bounds(int dim, const KernelDecay& decay, int degree,
                             double separation) {
    if (dim < 1) throw InvalidArgument("separated_bounds: dimension must be >= 1");
    if (!(decay.beta > static_cast<double>(dim)))
        throw InvalidArgument("separated_bounds: requires decay order beta > d");
    if (!(separation > 0.0) || separation > 0.5)
        throw InvalidArgument("separated_bounds: separation must lie in (0, 1/2]");
    if (degree < 2 || degree % 2 != 0)
        throw InvalidArgument("separated_bounds: degree must be even and >= 2");
    const double two_d = std::pow(2.0, dim);
    const double radius = two_d * (two_d - 1.0) * zeta(decay.beta - dim + 1.0) *
                          decay.c_beta /
                          std::pow(static_cast<double>(degree) * separation, decay.beta);
    return {1.0 - radius, 1.0 + radius, false,
            dim == 1 ? BoundProvenance::ThmUnivariate : BoundProvenance::ThmMultivariate};
}

EigenBounds jitter_bounds(const KernelDecay& decay, int degree, int node_count,
                          double jitter) {
    if (jitter < 0.0 || jitter >= 1.0)
        throw InvalidArgument("jitter_bounds: jitter must lie in [0, 1)");
    if (node_count < 1) throw InvalidArgument("jitter_bounds: need at least one node");
    if (!(decay.beta > 1.0))
        throw InvalidArgument("jitter_bounds: requires decay order beta > 1");
    if (degree < 2 || degree % 2 != 0)
        throw InvalidArgument("jitter_bounds: degree must be even and >= 2");
    const double radius =
        2.0 * zeta(decay.beta) * decay.c_beta *
        std::pow(static_cast<double>(node_count) /
                     (static_cast<double>(degree) * (1.0 - jitter)),
                 decay.beta);
    return {1.0 - radius, 1.0 + radius, false, BoundProvenance::CorJitter};
}

EigenBounds spline_qsep_bounds(int dim, int degree, double separation) {
    if (dim < 1) throw InvalidArgument("spline_qsep_bounds: dimension must be >= 1");
    if (!(separation > 0.0) || separation > 0.5)
        throw InvalidArgument("spline_qsep_bounds: separation must lie in (0, 1/2]");
    if (degree < 2 || degree % 2 != 0)
        throw InvalidArgument("spline_qsep_bounds: degree must be even and >= 2");
    if (static_cast<double>(degree) * separation <= 2.0 * dim)
        throw NumericError(
            "spline_qsep_bounds: certificate unavailable, requires N > 2 d / q");
    const double radius =
        std::pow(2.0 * dim / (static_cast<double>(degree) * separation), dim + 1);
    return {1.0 - radius, 1.0 + radius, false, BoundProvenance::CorSpline};
}

std::vector<double> equispaced_eigenvalues(const DampingFactors& weights, int grid_size,
                                           int dim) {
    if (grid_size < 1)
        throw InvalidArgument("equispaced_eigenvalues: grid size must be >= 1");
    if (weights.dim() != dim && weights.dim() != 1)
        throw InvalidArgument("equispaced_eigenvalues: weight dimension mismatch");
    const int n = grid_size;
    const int degree = weights.degree();

    if (weights.is_tensor() || weights.dim() == 1) {
        const Eigen::VectorXd factor =
            weights.is_tensor() ? weights.axis_factors() : weights.diagonal();
        // Per-axis aliasing sums; the weights vanish outside I_N, so the
        // shift range is finite.
        std::vector<double> axis(static_cast<std::size_t>(n), 0.0);
        for (int s = -n / 2; s < n - n / 2; ++s) {
            double sum = 0.0;
            for (int k = s; k >= -degree / 2; k -= n)
                if (k < degree / 2) sum += factor[k + degree / 2];
            for (int k = s + n; k < degree / 2; k += n)
                if (k >= -degree / 2) sum += factor[k + degree / 2];
            axis[static_cast<std::size_t>(s + n / 2)] = sum;
        }
        std::size_t count = 1;
        for (int t = 0; t < dim; ++t) count *= static_cast<std::size_t>(n);
        std::vector<double> eigs(count, std::pow(static_cast<double>(n), dim));
        std::vector<int> idx(static_cast<std::size_t>(dim), 0);
        for (std::size_t i = 0; i < count; ++i) {
            for (int t = 0; t < dim; ++t)
                eigs[i] *= axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])];
            int a = dim - 1;
            while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == n)
                idx[static_cast<std::size_t>(a--)] = 0;
        }
        std::sort(eigs.begin(), eigs.end());
        return eigs;
    }

    // General d-variate weights: fold every k in I_N^d onto its residue
    // class s = k mod n.
    const FrequencyGrid grid = weights.grid();
    std::size_t count = 1;
    for (int t = 0; t < dim; ++t) count *= static_cast<std::size_t>(n);
    std::vector<double> eigs(count, 0.0);
    const Eigen::VectorXd diag = weights.diagonal();
    std::vector<int> k(static_cast<std::size_t>(dim), -degree / 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::size_t s_lin = 0;
        for (int t = 0; t < dim; ++t) {
            int residue = ((k[static_cast<std::size_t>(t)] + n / 2) % n + n) % n;
            s_lin = s_lin * static_cast<std::size_t>(n) + static_cast<std::size_t>(residue);
        }
        eigs[s_lin] += diag[static_cast<Eigen::Index>(i)];
        int a = dim - 1;
        while (a >= 0 && ++k[static_cast<std::size_t>(a)] == degree / 2)
            k[static_cast<std::size_t>(a--)] = -degree / 2;
    }
    const double scale = std::pow(static_cast<double>(n), dim);
    for (double& v : eigs) v *= scale;
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

EigenBounds equispaced_closed_bounds(const ClosedKernelSpec& kind, int degree,
                                     double separation, int dim) {
    if (dim < 1) throw InvalidArgument("equispaced_closed_bounds: dimension >= 1");
    if (!(separation > 0.0) || separation > 0.5)
        throw InvalidArgument("equispaced_closed_bounds: separation in (0, 1/2]");
    const double n_real = 1.0 / separation;
    const int n = static_cast<int>(std::lround(n_real));
    if (n < 2 || std::abs(n_real - n) > 1e-9 * n_real)
        throw InvalidArgument(
            "equispaced_closed_bounds: q^{-1} must be an integer grid size >= 2");
    if (degree <= n)
        throw NumericError(
            "equispaced_closed_bounds: N <= q^{-1}, kernel matrix singular territory");
    const double nq = static_cast<double>(degree) / n;
    switch (kind.kind) {
        case ClosedKernelKind::Dirichlet: {
            const double fl = static_cast<double>(degree / n);        // floor(Nq)
            const double ce = static_cast<double>((degree + n - 1) / n);  // ceil(Nq)
            return {std::pow(fl / nq, dim), std::pow(ce / nq, dim), true,
                    BoundProvenance::CorDirichletFejer};
        }
        case ClosedKernelKind::Fejer: {
            // Valid bracket, but not attained at finite n: even at
            // N = (2 sigma + 1) n the aliasing spectrum reaches only
            // 1 +- (1 - 2/n)/(Nq)^2, so the exact flag stays off.
            const double radius = 1.0 / (nq * nq);
            return {std::pow(1.0 - radius, dim), std::pow(1.0 + radius, dim), false,
                    BoundProvenance::CorDirichletFejer};
        }
        default:
            throw InvalidArgument(
                "equispaced_closed_bounds: only Dirichlet and Fejer kernels");
    }
}

EigenBounds gershgorin_bounds(const KernelMatrix& matrix) {
    const int m = matrix.size();
    double radius = 0.0;
    for (int j = 0; j < m; ++j) {
        double row = 0.0;
        for (int l = 0; l < m; ++l)
            if (l != j) row += std::abs(matrix.entries(j, l));
        radius = std::max(radius, row);
    }
    return {1.0 - radius, 1.0 + radius, false, BoundProvenance::GershgorinMatrix};
}

namespace {

// Full Hermitian diagonalisation throughout: the kernel spectra cluster
// around 1, where power iteration cannot certify its tolerance, and the
// dense cap keeps direct solves at seconds scale.
Eigen::VectorXd hermitian_eigenvalues(const KernelMatrix& matrix) {
    if (matrix.size() > kDefaultDenseCap)
        throw InvalidArgument("dense oracle: matrix exceeds the dense cap");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("dense oracle: eigensolver failed");
    return solver.eigenvalues();
}

}  // namespace

EigenBounds dense_extremal_eigs(const KernelMatrix& matrix) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(matrix);
    return {ev[0], ev[ev.size() - 1], true, BoundProvenance::DenseOracle};
}

std::vector<double> dense_spectrum(const KernelMatrix& matrix) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(matrix);
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace torinterp
