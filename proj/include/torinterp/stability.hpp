#pragma once

#include <vector>

#include "torinterp/kernels.hpp"
#include "torinterp/types.hpp"
#include "torinterp/weights.hpp"

namespace torinterp {

enum class BoundProvenance {
    ThmUnivariate,
    ThmMultivariate,
    CorJitter,
    CorSpline,
    ThmEquispaced,
    CorDirichletFejer,
    GershgorinMatrix,
    DenseOracle,
};

/// Lower/upper bracket for the kernel matrix spectrum. `exact` marks
/// brackets whose edges are attained eigenvalues. A lower edge <= 0 means
/// the bracket certifies nothing about invertibility; callers decide.
struct EigenBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool exact = false;
    BoundProvenance provenance = BoundProvenance::DenseOracle;

    bool certifies_positive() const { return lower > 0.0; }
    double condition() const { return upper / lower; }
};

const char* provenance_name(BoundProvenance p);

/// Gershgorin bracket 1 +- 2^d (2^d - 1) zeta(beta - d + 1) C / (N q)^beta
/// for arbitrary q-separated nodes and a kernel with decay certificate
/// (beta, C). Requires beta > d. The d = 1 branch reproduces the
/// univariate theorem (2^1 (2^1 - 1) = 2).
EigenBounds separated_bounds(int dim, const KernelDecay& decay, int degree,
                             double separation);

/// Bracket for equispaced nodes disturbed by jitter epsilon in [0, 1):
/// 1 +- 2 zeta(beta) C M^beta / (N^beta (1 - epsilon)^beta). Coincides with
/// separated_bounds(1, decay, N, (1 - epsilon)/M).
EigenBounds jitter_bounds(const KernelDecay& decay, int degree, int node_count,
                          double jitter);

/// Full-rank bracket 1 +- (2d/(Nq))^(d+1) for the B-spline kernel of order
/// beta = d + 1, valid for N > 2 d / q; the lower edge is then positive.
EigenBounds spline_qsep_bounds(int dim, int degree, double separation);

/// Eigenvalues of the kernel matrix on the full equispaced grid (1/n) I_n^d:
/// lambda_s = n^d sum_r w_{s + n r}, s in I_n, weights extended by zero
/// outside I_N; tensor weights use the per-axis product form. Sorted
/// ascending, n^d values.
std::vector<double> equispaced_eigenvalues(const DampingFactors& weights, int grid_size,
                                           int dim);

/// Closed extremal eigenvalues on the equispaced grid with q^{-1} = n:
/// Dirichlet (floor(Nq)/Nq)^d and (ceil(Nq)/Nq)^d, both attained; Fejer
/// (1 -+ 1/(Nq)^2)^d as a valid but unattained bracket (the aliasing
/// spectrum at N = (2 sigma + 1) n reaches only 1 +- (1 - 2/n)/(Nq)^2).
/// Degrees N <= n are rejected as singular territory.
EigenBounds equispaced_closed_bounds(const ClosedKernelSpec& kind, int degree,
                                     double separation, int dim);

/// Gershgorin disc around the unit diagonal of an assembled matrix.
EigenBounds gershgorin_bounds(const KernelMatrix& matrix);

/// Extremal eigenvalues by dense Hermitian diagonalisation; the attained
/// edges, exact to solver precision.
EigenBounds dense_extremal_eigs(const KernelMatrix& matrix);

/// Full spectrum, ascending. Sizes up to the dense cap only.
std::vector<double> dense_spectrum(const KernelMatrix& matrix);

}  // namespace torinterp
