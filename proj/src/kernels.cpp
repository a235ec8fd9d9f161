#include "torinterp/kernels.hpp"

#include <cmath>
#include <numbers>

namespace torinterp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSinGuard = 1e-8;  // below this |sin(pi x)| the closed forms
                                    // switch to series to avoid cancellation

}  // namespace

double zeta(double beta) {
    if (beta <= 1.0) throw InvalidArgument("zeta: requires beta > 1");
    const int cut = 2000;
    double sum = 0.0;
    for (int r = cut - 1; r >= 1; --r) sum += std::pow(static_cast<double>(r), -beta);
    // Euler-Maclaurin tail at a = cut; the first omitted term is far below
    // 1e-12 for every beta > 1.
    const double a = static_cast<double>(cut);
    sum += std::pow(a, 1.0 - beta) / (beta - 1.0);
    sum += 0.5 * std::pow(a, -beta);
    sum += beta * std::pow(a, -beta - 1.0) / 12.0;
    sum -= beta * (beta + 1.0) * (beta + 2.0) * std::pow(a, -beta - 3.0) / 720.0;
    return sum;
}

namespace {

// sum_{k=-N/2}^{N/2-1} w_k e^{2 pi i k x} with a running phase product,
// resynchronised periodically to keep the drift near machine precision.
Complex univariate_kernel_sum(const Eigen::VectorXd& w, double x) {
    const int degree = static_cast<int>(w.size());
    const Complex step = std::polar(1.0, kTwoPi * x);
    Complex phase = std::polar(1.0, kTwoPi * (-degree / 2) * x);
    Complex acc = 0.0;
    for (int i = 0; i < degree; ++i) {
        if ((i & 255) == 0 && i > 0)
            phase = std::polar(1.0, kTwoPi * (i - degree / 2) * x);
        acc += w[i] * phase;
        phase *= step;
    }
    return acc;
}

}  // namespace

Complex kernel_eval(const DampingFactors& weights, const TorusPoint& x) {
    if (x.dim() != weights.dim())
        throw InvalidArgument("kernel_eval: dimension mismatch");
    if (weights.is_tensor()) {
        Complex v = 1.0;
        for (int t = 0; t < weights.dim(); ++t)
            v *= univariate_kernel_sum(weights.axis_factors(),
                                       x.coords[static_cast<std::size_t>(t)]);
        return v;
    }
    const FrequencyGrid grid = weights.grid();
    const int d = grid.dim();
    const int degree = grid.degree();
    std::vector<Complex> tables(static_cast<std::size_t>(d) * static_cast<std::size_t>(degree));
    for (int t = 0; t < d; ++t)
        for (int k = -degree / 2; k < degree / 2; ++k)
            tables[static_cast<std::size_t>(t) * degree + static_cast<std::size_t>(k + degree / 2)] =
                std::polar(1.0, kTwoPi * k * x.coords[static_cast<std::size_t>(t)]);
    const Eigen::VectorXd diag = weights.diagonal();
    std::vector<int> k(static_cast<std::size_t>(d), -degree / 2);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Complex phase = tables[static_cast<std::size_t>(k[0] + degree / 2)];
        for (int t = 1; t < d; ++t)
            phase *= tables[static_cast<std::size_t>(t) * degree +
                            static_cast<std::size_t>(k[static_cast<std::size_t>(t)] + degree / 2)];
        acc += diag[static_cast<Eigen::Index>(i)] * phase;
        int axis = d - 1;
        while (axis >= 0 && ++k[static_cast<std::size_t>(axis)] == degree / 2)
            k[static_cast<std::size_t>(axis--)] = -degree / 2;
    }
    return acc;
}

Complex kernel_closed_form(const ClosedKernelSpec& kind, int degree, double x) {
    if (degree < 2 || degree % 2 != 0)
        throw InvalidArgument("kernel_closed_form: degree must be even and >= 2");
    if (std::abs(x) > 0.5)
        throw InvalidArgument("kernel_closed_form: |x| must be <= 1/2");
    const double sin_pix = std::sin(std::numbers::pi * x);
    const double px2 = std::numbers::pi * x * std::numbers::pi * x;
    switch (kind.kind) {
        case ClosedKernelKind::Dirichlet: {
            double ratio;
            if (std::abs(sin_pix) < kSinGuard) {
                const double n = degree;
                ratio = 1.0 - (n * n - 1.0) * px2 / 6.0;
            } else {
                ratio = std::sin(degree * std::numbers::pi * x) / (degree * sin_pix);
            }
            return std::polar(1.0, -std::numbers::pi * x) * ratio;
        }
        case ClosedKernelKind::Fejer: {
            const double half = degree / 2.0;
            double quotient_sq;
            if (std::abs(sin_pix) < kSinGuard) {
                quotient_sq = half * half * (1.0 - (half * half - 1.0) * px2 / 3.0);
            } else {
                const double s = std::sin(half * std::numbers::pi * x) / sin_pix;
                quotient_sq = s * s;
            }
            const Complex front = 1.0 + std::polar(1.0, -kTwoPi * x);
            return front * (2.0 / (static_cast<double>(degree) * degree)) * quotient_sq;
        }
        case ClosedKernelKind::Jackson: {
            if (ClosedKernelSpec::jackson_degree(kind.beta, kind.sigma) != degree)
                throw InvalidArgument(
                    "kernel_closed_form: jackson requires N = beta*(sigma-1)+2");
            const double sigma = kind.sigma;
            double quotient_pow;
            if (std::abs(sin_pix) < kSinGuard) {
                quotient_pow = std::pow(sigma, kind.beta) *
                               (1.0 - kind.beta * (sigma * sigma - 1.0) * px2 / 6.0);
            } else {
                const double s = std::sin(sigma * std::numbers::pi * x) / sin_pix;
                quotient_pow = std::pow(s, kind.beta);
            }
            const Complex front = 1.0 + std::polar(1.0, -kTwoPi * x);
            return front * quotient_pow / (2.0 * std::pow(sigma, kind.beta));
        }
    }
    throw InvalidArgument("kernel_closed_form: unknown kind");
}

KernelDecay decay_profile(const WeightFunctionSpec& spec, int reference_degree) {
    switch (spec.kind) {
        case WeightKind::TopHat:
            return {1.0, 1.0, 2, false};
        case WeightKind::Hat:  // same construction as bspline(2)
            [[fallthrough]];
        case WeightKind::BSpline: {
            const int beta = spec.beta();
            if (beta == 1) return {1.0, 1.0, 2, false};
            const double z = zeta(static_cast<double>(beta));
            const double c = (std::pow(2.0, beta) - 1.0) * z * std::pow(beta, beta) /
                             (std::pow(2.0, beta - 1) * std::pow(std::numbers::pi, beta) - z);
            return {static_cast<double>(beta), c, 2 * beta, false};
        }
        case WeightKind::Sobolev: {
            const int beta = spec.beta();
            const int n_ref = std::max(reference_degree, 2 * beta);
            const DampingFactors w = damping_from_weight(spec, n_ref);
            double worst = 0.0;
            const int samples = 10000;
            for (int i = 1; i <= samples; ++i) {
                const double x = 0.5 * static_cast<double>(i) / samples;
                const double v = std::abs(univariate_kernel_sum(w.axis_factors(), x));
                worst = std::max(worst, v * std::pow(n_ref * x, beta));
            }
            return {static_cast<double>(beta), 1.1 * worst, 2 * beta, true};
        }
    }
    throw InvalidArgument("decay_profile: unknown weight kind");
}

KernelDecay decay_profile(const ClosedKernelSpec& kind) {
    switch (kind.kind) {
        case ClosedKernelKind::Dirichlet:
            return {1.0, 1.0, 2, false};
        case ClosedKernelKind::Fejer:
            return {2.0, 1.0, 2, false};
        case ClosedKernelKind::Jackson:
            return {static_cast<double>(kind.beta),
                    std::pow(kind.beta / 2.0, kind.beta), 2, false};
    }
    throw InvalidArgument("decay_profile: unknown kernel kind");
}

KernelMatrix kernel_matrix(const NodeSet& nodes, const DampingFactors& weights,
                           int dense_cap) {
    if (nodes.dim() != weights.dim())
        throw InvalidArgument("kernel_matrix: dimension mismatch");
    const int m = nodes.size();
    if (m > dense_cap)
        throw InvalidArgument("kernel_matrix: node count exceeds the dense cap");
    KernelMatrix out;
    out.entries.resize(m, m);
    TorusPoint diff;
    diff.coords.resize(static_cast<std::size_t>(nodes.dim()));
    const Complex diag = kernel_eval(weights, diff);  // K(0) = sum of weights
    for (int j = 0; j < m; ++j) {
        out.entries(j, j) = diag;
        for (int l = j + 1; l < m; ++l) {
            for (int t = 0; t < nodes.dim(); ++t)
                diff.coords[static_cast<std::size_t>(t)] =
                    canonical_coord(nodes.coord(j, t) - nodes.coord(l, t));
            const Complex v = kernel_eval(weights, diff);
            out.entries(j, l) = v;
            out.entries(l, j) = std::conj(v);
        }
    }
    return out;
}

KernelMatrix kernel_matrix_closed(const ClosedKernelSpec& kind, int degree,
                                  const NodeSet& nodes, int dense_cap) {
    const int m = nodes.size();
    if (m > dense_cap)
        throw InvalidArgument("kernel_matrix_closed: node count exceeds the dense cap");
    KernelMatrix out;
    out.entries.resize(m, m);
    for (int j = 0; j < m; ++j) {
        out.entries(j, j) = 1.0;
        for (int l = j + 1; l < m; ++l) {
            Complex v = 1.0;
            for (int t = 0; t < nodes.dim(); ++t)
                v *= kernel_closed_form(
                    kind, degree, canonical_coord(nodes.coord(j, t) - nodes.coord(l, t)));
            out.entries(j, l) = v;
            out.entries(l, j) = std::conj(v);
        }
    }
    return out;
}

KernelMatrix kernel_matrix_factorized(const NodeSet& nodes, const DampingFactors& weights,
                                      TransformMode mode, int dense_cap) {
    if (nodes.dim() != weights.dim())
        throw InvalidArgument("kernel_matrix_factorized: dimension mismatch");
    const int m = nodes.size();
    if (m > dense_cap)
        throw InvalidArgument("kernel_matrix_factorized: node count exceeds the dense cap");
    const FrequencyGrid grid = weights.grid();
    const FourierOperator op(nodes, grid, mode);
    const Eigen::VectorXd diag = weights.diagonal();
    KernelMatrix out;
    out.entries.resize(m, m);
    for (int l = 0; l < m; ++l) {
        SampleVector unit = SampleVector::Zero(m);
        unit[l] = 1.0;
        SpectralVector col = op.adjoint(unit);
        col.coeffs.array() *= diag.array().cast<Complex>();
        out.entries.col(l) = op.forward(col);
    }
    return out;
}

}  // namespace torinterp
