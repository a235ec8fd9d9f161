#pragma once

#include <Eigen/Core>

#include "torinterp/types.hpp"

namespace torinterp {

enum class WeightKind { TopHat, Hat, BSpline, Sobolev };

/// A weight function g on [-1/2, 1/2]: nonnegative, vanishing at the
/// boundary, L1-normalised. Sampling g at k/N and pair-averaging yields
/// damping factors whose kernel inherits the smoothness of g as decay.
struct WeightFunctionSpec {
    WeightKind kind = WeightKind::TopHat;
    int order = 1;       // beta
    double alpha = 0.0;  // sobolev only
    double gamma = 0.0;  // sobolev only

    static WeightFunctionSpec top_hat() { return {WeightKind::TopHat, 1, 0.0, 0.0}; }
    static WeightFunctionSpec hat() { return {WeightKind::Hat, 2, 0.0, 0.0}; }
    static WeightFunctionSpec bspline(int beta);
    static WeightFunctionSpec sobolev(double alpha, int beta, double gamma);

    int beta() const { return order; }
    std::string label() const;
};

/// Cardinal B-spline N_beta supported on (0, beta), evaluated by the
/// Cox-de-Boor recurrence. The first-order spline uses the half-open
/// convention N_1 = 1 on [0, 1), which makes the recurrence exact at the
/// knots of every higher order.
double cardinal_bspline(int beta, double z);

/// Evaluate the weight function; zero outside [-1/2, 1/2]. The Sobolev
/// normalisation constant is computed once per spec by adaptive quadrature
/// (relative tolerance 1e-10) and cached.
double weight_eval(const WeightFunctionSpec& spec, double z);

/// Norm of the samples ||g||_{1,N} = sum_{k=-N/2}^{N/2} g(k/N).
double sample_norm(const WeightFunctionSpec& spec, int degree);

/// Positive frequency weights over I_N with sum 1, the diagonal of W-hat.
/// Either a general d-variate vector or a tensor product of one univariate
/// factor per axis.
class DampingFactors {
public:
    /// General weights over the given grid (values in grid linear order).
    static DampingFactors general(const FrequencyGrid& grid, Eigen::VectorXd values);

    /// Univariate weights (d = 1).
    static DampingFactors univariate(int degree, Eigen::VectorXd values);

    /// Tensor product of one univariate factor applied to every axis.
    static DampingFactors tensor_product(int dim, int degree, Eigen::VectorXd factor);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    FrequencyGrid grid() const { return FrequencyGrid(dim_, degree_); }
    bool is_tensor() const { return tensor_; }

    /// The univariate factor shared by all axes (tensor structure only).
    const Eigen::VectorXd& axis_factors() const;

    /// Weight at a multi-index k in I_N^d.
    double value(const std::vector<int>& k) const;

    /// All N^d weights in grid linear order. For tensor weights the
    /// products are materialised on each call.
    Eigen::VectorXd diagonal() const;

private:
    DampingFactors(int dim, int degree, bool tensor, Eigen::VectorXd values);

    int dim_;
    int degree_;
    bool tensor_;               // values_ holds the univariate axis factor
    Eigen::VectorXd values_;    // length N (tensor) or N^d (general)
};

/// Damping factors w_k = (g(k/N) + g((k+1)/N)) / (2 ||g||_{1,N}) for
/// k = -N/2, ..., N/2-1. The sum telescopes to exactly 1 because g
/// vanishes at +-1/2. Below N = 2*beta a warning is emitted (the decay
/// certificate needs N >= 2*beta, the construction itself does not).
DampingFactors damping_from_weight(const WeightFunctionSpec& spec, int degree);

enum class ClosedKernelKind { Dirichlet, Fejer, Jackson };

struct ClosedKernelSpec {
    ClosedKernelKind kind = ClosedKernelKind::Dirichlet;
    int beta = 0;   // jackson only, even
    int sigma = 0;  // jackson only; N = beta*(sigma-1)+2

    static ClosedKernelSpec dirichlet() { return {ClosedKernelKind::Dirichlet, 0, 0}; }
    static ClosedKernelSpec fejer() { return {ClosedKernelKind::Fejer, 0, 0}; }
    static ClosedKernelSpec jackson(int beta, int sigma);

    /// Jackson degree admissibility: N = beta*(sigma-1)+2 for some sigma >= 1.
    static int jackson_degree(int beta, int sigma) { return beta * (sigma - 1) + 2; }
};

/// Closed-form coefficient families: Dirichlet w_k = 1/N, Fejer
/// w_k = (2/N)(1 - |2k+1|/N), Jackson via iterated self-convolution of the
/// Fejer core, renormalised to sum 1.
DampingFactors damping_closed(const ClosedKernelSpec& kind, int degree);

/// Tensor product weights w_k = prod_t base(k_t) over I_N^d.
DampingFactors tensorize(const DampingFactors& base, int dim);

struct VariationBound {
    double value = 0.0;
    bool exact = false;
};

/// Total variation |g^(beta-1)|_V: exact (2*beta)^beta for B-splines,
/// a sampled-difference upper estimate for Sobolev weights.
VariationBound variation_bound(const WeightFunctionSpec& spec);

}  // namespace torinterp
