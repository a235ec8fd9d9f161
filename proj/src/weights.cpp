#include "torinterp/weights.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace torinterp {

WeightFunctionSpec WeightFunctionSpec::bspline(int beta) {
    if (beta < 1) throw InvalidArgument("bspline weight: order must be >= 1");
    return {WeightKind::BSpline, beta, 0.0, 0.0};
}

WeightFunctionSpec WeightFunctionSpec::sobolev(double alpha, int beta, double gamma) {
    if (alpha <= 0.0 || gamma <= 0.0 || beta < 1)
        throw InvalidArgument("sobolev weight: need alpha > 0, gamma > 0, beta >= 1");
    return {WeightKind::Sobolev, beta, alpha, gamma};
}

std::string WeightFunctionSpec::label() const {
    std::ostringstream s;
    switch (kind) {
        case WeightKind::TopHat: s << "top-hat"; break;
        case WeightKind::Hat: s << "hat"; break;
        case WeightKind::BSpline: s << "bspline(" << order << ")"; break;
        case WeightKind::Sobolev:
            s << "sobolev(" << alpha << "," << order << "," << gamma << ")";
            break;
    }
    return s.str();
}

double cardinal_bspline(int beta, double z) {
    if (beta < 1) throw InvalidArgument("cardinal_bspline: order must be >= 1");
    if (z < 0.0 || z > beta) return 0.0;
    if (beta == 1) return (z >= 0.0 && z < 1.0) ? 1.0 : 0.0;
    // Cox-de-Boor on integer knots: v[j] holds N_r(z - j) while r ascends.
    std::vector<double> v(static_cast<std::size_t>(beta), 0.0);
    for (int j = 0; j < beta; ++j) {
        double zj = z - j;
        v[static_cast<std::size_t>(j)] = (zj >= 0.0 && zj < 1.0) ? 1.0 : 0.0;
    }
    for (int r = 2; r <= beta; ++r)
        for (int j = 0; j + r <= beta; ++j) {
            double zj = z - j;
            v[static_cast<std::size_t>(j)] =
                (zj * v[static_cast<std::size_t>(j)] +
                 (r - zj) * v[static_cast<std::size_t>(j) + 1]) /
                (r - 1);
        }
    return v[0];
}

namespace {

double sobolev_raw(double alpha, int beta, double gamma, double z) {
    double s = 0.25 - z * z;
    if (s <= 0.0) return 0.0;
    return std::pow(s, beta) / (gamma + std::pow(std::abs(z), 2.0 * alpha));
}

double sobolev_normaliser(double alpha, int beta, double gamma) {
    static std::map<std::tuple<double, int, double>, double> cache;
    static std::mutex mutex;
    const auto key = std::make_tuple(alpha, beta, gamma);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double z) { return sobolev_raw(alpha, beta, gamma, z); };
    // |z|^(2 alpha) has a kink at 0; integrate the halves separately.
    double integral =
        2.0 * gauss_kronrod<double, 15>::integrate(f, 0.0, 0.5, 15, 1e-10);
    if (!(integral > 0.0) || !std::isfinite(integral))
        throw NumericError("sobolev weight: normalisation integral is degenerate");
    double c = 1.0 / integral;
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, c);
    return c;
}

}  // namespace

double weight_eval(const WeightFunctionSpec& spec, double z) {
    switch (spec.kind) {
        case WeightKind::TopHat:
            return (std::abs(z) < 0.5) ? 1.0 : 0.0;
        case WeightKind::Hat:
            return (std::abs(z) <= 0.5) ? 2.0 - 4.0 * std::abs(z) : 0.0;
        case WeightKind::BSpline: {
            const int beta = spec.order;
            if (beta == 1) return (std::abs(z) < 0.5) ? 1.0 : 0.0;
            if (std::abs(z) >= 0.5) return 0.0;
            return beta * cardinal_bspline(beta, beta * z + beta / 2.0);
        }
        case WeightKind::Sobolev: {
            if (std::abs(z) >= 0.5) return 0.0;
            return sobolev_normaliser(spec.alpha, spec.order, spec.gamma) *
                   sobolev_raw(spec.alpha, spec.order, spec.gamma, z);
        }
    }
    return 0.0;
}

double sample_norm(const WeightFunctionSpec& spec, int degree) {
    if (degree < 2 || degree % 2 != 0)
        throw InvalidArgument("sample_norm: degree must be even and >= 2");
    double sum = 0.0;
    for (int k = -degree / 2; k <= degree / 2; ++k)
        sum += weight_eval(spec, static_cast<double>(k) / degree);
    if (!(sum > 0.0))
        throw NumericError("sample_norm: degenerate weight, nonpositive sample sum");
    return sum;
}

DampingFactors::DampingFactors(int dim, int degree, bool tensor, Eigen::VectorXd values)
    : dim_(dim), degree_(degree), tensor_(tensor), values_(std::move(values)) {
    if (degree_ < 2 || degree_ % 2 != 0)
        throw InvalidArgument("DampingFactors: degree must be even and >= 2");
    if ((values_.array() <= 0.0).any())
        throw InvalidArgument("DampingFactors: all weights must be positive");
    // Normalise so the d-variate sum is 1: per-axis sum 1 for tensor
    // structure, total sum 1 otherwise.
    values_ /= values_.sum();
}

DampingFactors DampingFactors::general(const FrequencyGrid& grid, Eigen::VectorXd values) {
    if (static_cast<std::size_t>(values.size()) != grid.size())
        throw InvalidArgument("DampingFactors: value count does not match grid");
    return DampingFactors(grid.dim(), grid.degree(), false, std::move(values));
}

DampingFactors DampingFactors::univariate(int degree, Eigen::VectorXd values) {
    if (values.size() != degree)
        throw InvalidArgument("DampingFactors: univariate value count must equal degree");
    return DampingFactors(1, degree, true, std::move(values));
}

DampingFactors DampingFactors::tensor_product(int dim, int degree, Eigen::VectorXd factor) {
    if (factor.size() != degree)
        throw InvalidArgument("DampingFactors: tensor factor length must equal degree");
    // The constructor normalises the axis factor to sum 1, so the product
    // weights over I_N^d sum to 1 as well.
    return DampingFactors(dim, degree, true, std::move(factor));
}

const Eigen::VectorXd& DampingFactors::axis_factors() const {
    if (!tensor_)
        throw InvalidArgument("DampingFactors: general weights have no axis factor");
    return values_;
}

double DampingFactors::value(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != dim_)
        throw InvalidArgument("DampingFactors: index dimension mismatch");
    if (tensor_) {
        double v = 1.0;
        for (int t = 0; t < dim_; ++t)
            v *= values_[k[static_cast<std::size_t>(t)] + degree_ / 2];
        return v;
    }
    return values_[static_cast<Eigen::Index>(grid().linear_index(k))];
}

Eigen::VectorXd DampingFactors::diagonal() const {
    if (!tensor_ || dim_ == 1) return values_;
    const FrequencyGrid g = grid();
    Eigen::VectorXd diag(static_cast<Eigen::Index>(g.size()));
    std::vector<int> k(static_cast<std::size_t>(dim_), g.min_index());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double v = 1.0;
        for (int t = 0; t < dim_; ++t)
            v *= values_[k[static_cast<std::size_t>(t)] + degree_ / 2];
        diag[static_cast<Eigen::Index>(i)] = v;
        int axis = dim_ - 1;
        while (axis >= 0 && ++k[static_cast<std::size_t>(axis)] > g.max_index())
            k[static_cast<std::size_t>(axis--)] = g.min_index();
    }
    return diag;
}

DampingFactors damping_from_weight(const WeightFunctionSpec& spec, int degree) {
    if (degree < 2 || degree % 2 != 0)
        throw InvalidArgument("damping_from_weight: degree must be even and >= 2");
    if (degree < 2 * spec.beta())
        std::cerr << "torinterp: warning: degree " << degree << " below 2*beta = "
                  << 2 * spec.beta() << " for weight " << spec.label()
                  << "; decay certificate does not apply\n";
    const double norm = sample_norm(spec, degree);
    Eigen::VectorXd w(degree);
    bool clamped = false;
    for (int k = -degree / 2; k < degree / 2; ++k) {
        double v = (weight_eval(spec, static_cast<double>(k) / degree) +
                    weight_eval(spec, static_cast<double>(k + 1) / degree)) /
                   (2.0 * norm);
        if (v <= 0.0) {
            // Positivity of the diagonal is required for the W^{-1} norms;
            // fast boundary decay may underflow the edge factors.
            v = std::numeric_limits<double>::min();
            clamped = true;
        }
        w[k + degree / 2] = v;
    }
    if (clamped)
        std::cerr << "torinterp: warning: clamped vanishing boundary damping factor for "
                  << spec.label() << ", N = " << degree << "\n";
    return DampingFactors::univariate(degree, std::move(w));
}

ClosedKernelSpec ClosedKernelSpec::jackson(int beta, int sigma) {
    if (beta < 2 || beta % 2 != 0)
        throw InvalidArgument("jackson kernel: beta must be even and >= 2");
    if (sigma < 1) throw InvalidArgument("jackson kernel: sigma must be >= 1");
    return {ClosedKernelKind::Jackson, beta, sigma};
}

namespace {

// Coefficients of (sin(sigma pi x) / sin(pi x))^beta: the (beta/2)-fold
// self-convolution of the triangle (sigma - |m|), m = -(sigma-1)..sigma-1.
std::vector<double> jackson_core(int beta, int sigma) {
    std::vector<double> triangle(static_cast<std::size_t>(2 * sigma - 1));
    for (int m = -(sigma - 1); m <= sigma - 1; ++m)
        triangle[static_cast<std::size_t>(m + sigma - 1)] = sigma - std::abs(m);
    std::vector<double> core = triangle;
    for (int fold = 1; fold < beta / 2; ++fold) {
        std::vector<double> next(core.size() + triangle.size() - 1, 0.0);
        for (std::size_t i = 0; i < core.size(); ++i)
            for (std::size_t j = 0; j < triangle.size(); ++j)
                next[i + j] += core[i] * triangle[j];
        core = std::move(next);
    }
    return core;  // support m = -(N/2-1)..(N/2-1), N = beta*(sigma-1)+2
}

}  // namespace

DampingFactors damping_closed(const ClosedKernelSpec& kind, int degree) {
    if (degree < 2 || degree % 2 != 0)
        throw InvalidArgument("damping_closed: degree must be even and >= 2");
    Eigen::VectorXd w(degree);
    switch (kind.kind) {
        case ClosedKernelKind::Dirichlet:
            w.setConstant(1.0 / degree);
            break;
        case ClosedKernelKind::Fejer:
            for (int k = -degree / 2; k < degree / 2; ++k)
                w[k + degree / 2] =
                    (2.0 / degree) * (1.0 - std::abs(2.0 * k + 1.0) / degree);
            break;
        case ClosedKernelKind::Jackson: {
            if (ClosedKernelSpec::jackson_degree(kind.beta, kind.sigma) != degree)
                throw InvalidArgument(
                    "damping_closed: jackson requires N = beta*(sigma-1)+2");
            const auto core = jackson_core(kind.beta, kind.sigma);
            const int half = degree / 2 - 1;  // core support is [-half, half]
            auto core_at = [&](int m) {
                if (m < -half || m > half) return 0.0;
                return core[static_cast<std::size_t>(m + half)];
            };
            const double denom = 2.0 * std::pow(static_cast<double>(kind.sigma), kind.beta);
            for (int k = -degree / 2; k < degree / 2; ++k)
                w[k + degree / 2] = (core_at(k) + core_at(k + 1)) / denom;
            break;
        }
    }
    return DampingFactors::univariate(degree, std::move(w));
}

DampingFactors tensorize(const DampingFactors& base, int dim) {
    if (base.dim() != 1)
        throw InvalidArgument("tensorize: base weights must be univariate");
    if (dim < 1) throw InvalidArgument("tensorize: dimension must be >= 1");
    if (dim == 1) return base;
    return DampingFactors::tensor_product(dim, base.degree(), base.axis_factors());
}

VariationBound variation_bound(const WeightFunctionSpec& spec) {
    if (spec.beta() < 2)
        throw InvalidArgument(
            "variation_bound: unsupported for order 1 (top-hat) weights");
    switch (spec.kind) {
        case WeightKind::Hat:
            return {16.0, true};  // (2*beta)^beta at beta = 2
        case WeightKind::BSpline:
            return {std::pow(2.0 * spec.order, spec.order), true};
        case WeightKind::Sobolev: {
            // Upper estimate of |g^(beta-1)|_V by repeated sampled
            // differencing; inflated 10% and flagged as an estimate.
            double worst = 0.0;
            for (int resolution : {4096, 8192, 16384}) {
                const double h = 1.0 / resolution;
                std::vector<double> v(static_cast<std::size_t>(resolution) + 1);
                for (int i = 0; i <= resolution; ++i)
                    v[static_cast<std::size_t>(i)] =
                        weight_eval(spec, -0.5 + i * h);
                for (int pass = 0; pass < spec.order - 1; ++pass) {
                    for (std::size_t i = 0; i + 1 < v.size(); ++i)
                        v[i] = (v[i + 1] - v[i]) / h;
                    v.pop_back();
                }
                double tv = 0.0;
                for (std::size_t i = 0; i + 1 < v.size(); ++i)
                    tv += std::abs(v[i + 1] - v[i]);
                worst = std::max(worst, tv);
            }
            return {1.1 * worst, false};
        }
        default:
            throw InvalidArgument("variation_bound: unsupported weight kind");
    }
}

}  // namespace torinterp
