#pragma once

#include <Eigen/Core>

#include "torinterp/geometry.hpp"
#include "torinterp/transform.hpp"
#include "torinterp/types.hpp"
#include "torinterp/weights.hpp"

namespace torinterp {

/// Riemann zeta for beta > 1, truncated summation with Euler-Maclaurin tail
/// correction; absolute error below 1e-12.
double zeta(double beta);

/// Localisation certificate |K_N(x)| <= c_beta / (N ||x||_inf)^beta for all
/// x in [-1/2,1/2]^d \ {0} and even N >= valid_from_degree.
struct KernelDecay {
    double beta = 1.0;
    double c_beta = 1.0;
    int valid_from_degree = 2;
    bool empirical = false;  // constant estimated from a grid, not proven
};

/// Trigonometric kernel K_N(x) = sum_{k in I_N} w_k e^{2 pi i k.x}.
/// Tensor-structured weights are evaluated as a product of d univariate
/// sums (cost d*N instead of N^d).
Complex kernel_eval(const DampingFactors& weights, const TorusPoint& x);

/// Univariate closed forms (Dirichlet geometric sum, Fejer and Jackson
/// sine quotients) with series handling of the removable singularity at
/// x = 0. Requires |x| <= 1/2.
Complex kernel_closed_form(const ClosedKernelSpec& kind, int degree, double x);

/// Decay certificate for a sampled weight function: exact constants for
/// B-spline orders, an empirical grid estimate (inflated 10%, flagged) for
/// Sobolev weights evaluated at `reference_degree`.
KernelDecay decay_profile(const WeightFunctionSpec& spec, int reference_degree = 64);

/// Decay certificate for the closed-form families.
KernelDecay decay_profile(const ClosedKernelSpec& kind);

/// Dense Gram matrix (K_N(x_j - x_l))_{j,l}: Hermitian, unit diagonal,
/// positive semidefinite.
struct KernelMatrix {
    Eigen::MatrixXcd entries;

    int size() const { return static_cast<int>(entries.rows()); }
};

inline constexpr int kDefaultDenseCap = 4096;

/// Assemble the kernel matrix from damping factors. Refuses node sets
/// larger than the dense cap.
KernelMatrix kernel_matrix(const NodeSet& nodes, const DampingFactors& weights,
                           int dense_cap = kDefaultDenseCap);

/// Closed-form assembly for the named families (tensor product across
/// axes); O(1) per entry instead of O(d N).
KernelMatrix kernel_matrix_closed(const ClosedKernelSpec& kind, int degree,
                                  const NodeSet& nodes,
                                  int dense_cap = kDefaultDenseCap);

/// Factorisation oracle: assembles A W A^H column by column through the
/// transform module. Used to validate kernel_matrix against Lemma-level
/// structure.
KernelMatrix kernel_matrix_factorized(const NodeSet& nodes, const DampingFactors& weights,
                                      TransformMode mode = TransformMode::direct(),
                                      int dense_cap = kDefaultDenseCap);

}  // namespace torinterp
