#include "torinterp/transform.hpp"

#include <cmath>
#include <numbers>

namespace torinterp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (!is_pow2(n_)) throw InvalidArgument("Fft: length must be a power of two");
    twiddle_.resize(n_ / 2);
    for (std::size_t j = 0; j < n_ / 2; ++j)
        twiddle_[j] = std::polar(1.0, -kTwoPi * static_cast<double>(j) / static_cast<double>(n_));
}

void Fft::run(Complex* a, bool inverse) const {
    const std::size_t n = n_;
    if (n == 1) return;
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len)
            for (std::size_t j = 0; j < len / 2; ++j) {
                Complex w = twiddle_[j * step];
                if (inverse) w = std::conj(w);
                Complex u = a[i + j];
                Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
    }
}

namespace {

// In-place FFT along every axis of an n^d cube stored row-major.
void fft_nd(std::vector<Complex>& data, int dim, std::size_t n, const Fft& fft,
            bool inverse) {
    if (dim == 1) {
        inverse ? fft.inverse(data.data()) : fft.forward(data.data());
        return;
    }
    std::vector<Complex> scratch(n);
    std::size_t total = data.size();
    for (int axis = dim - 1; axis >= 0; --axis) {
        std::size_t stride = 1;
        for (int t = dim - 1; t > axis; --t) stride *= n;
        const std::size_t block = stride * n;
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                if (stride == 1) {
                    Complex* line = data.data() + base;
                    inverse ? fft.inverse(line) : fft.forward(line);
                } else {
                    for (std::size_t i = 0; i < n; ++i)
                        scratch[i] = data[base + off + i * stride];
                    inverse ? fft.inverse(scratch.data()) : fft.forward(scratch.data());
                    for (std::size_t i = 0; i < n; ++i)
                        data[base + off + i * stride] = scratch[i];
                }
            }
        }
    }
}

// Per-node, per-axis complex exponential table e^{2 pi i k x} for k in I_N.
void fill_axis_table(double x, int degree, Complex* table) {
    for (int k = -degree / 2; k < degree / 2; ++k)
        table[k + degree / 2] = std::polar(1.0, kTwoPi * k * x);
}

}  // namespace

SampleVector ndft_forward(const SpectralVector& coeffs, const NodeSet& nodes) {
    const FrequencyGrid& grid = coeffs.grid;
    if (grid.dim() != nodes.dim())
        throw InvalidArgument("ndft_forward: dimension mismatch");
    const int d = grid.dim();
    const int degree = grid.degree();
    const std::size_t size = grid.size();
    SampleVector out(nodes.size());
    std::vector<Complex> tables(static_cast<std::size_t>(d) * static_cast<std::size_t>(degree));
    std::vector<int> k(static_cast<std::size_t>(d));
    for (int j = 0; j < nodes.size(); ++j) {
        for (int t = 0; t < d; ++t)
            fill_axis_table(nodes.coord(j, t), degree,
                            tables.data() + static_cast<std::size_t>(t) * degree);
        std::fill(k.begin(), k.end(), -degree / 2);
        Complex acc = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            Complex phase = tables[static_cast<std::size_t>(k[0] + degree / 2)];
            for (int t = 1; t < d; ++t)
                phase *= tables[static_cast<std::size_t>(t) * degree +
                                static_cast<std::size_t>(k[static_cast<std::size_t>(t)] + degree / 2)];
            acc += coeffs[i] * phase;
            int axis = d - 1;
            while (axis >= 0 && ++k[static_cast<std::size_t>(axis)] == degree / 2)
                k[static_cast<std::size_t>(axis--)] = -degree / 2;
        }
        out[j] = acc;
    }
    return out;
}

SpectralVector ndft_adjoint(const SampleVector& samples, const NodeSet& nodes,
                            const FrequencyGrid& grid) {
    if (grid.dim() != nodes.dim())
        throw InvalidArgument("ndft_adjoint: dimension mismatch");
    if (samples.size() != nodes.size())
        throw InvalidArgument("ndft_adjoint: sample count does not match node count");
    const int d = grid.dim();
    const int degree = grid.degree();
    const std::size_t size = grid.size();
    SpectralVector out(grid);
    std::vector<Complex> tables(static_cast<std::size_t>(d) * static_cast<std::size_t>(degree));
    std::vector<int> k(static_cast<std::size_t>(d));
    for (int j = 0; j < nodes.size(); ++j) {
        for (int t = 0; t < d; ++t)
            fill_axis_table(nodes.coord(j, t), degree,
                            tables.data() + static_cast<std::size_t>(t) * degree);
        const Complex y = samples[j];
        std::fill(k.begin(), k.end(), -degree / 2);
        for (std::size_t i = 0; i < size; ++i) {
            Complex phase = tables[static_cast<std::size_t>(k[0] + degree / 2)];
            for (int t = 1; t < d; ++t)
                phase *= tables[static_cast<std::size_t>(t) * degree +
                                static_cast<std::size_t>(k[static_cast<std::size_t>(t)] + degree / 2)];
            out[i] += y * std::conj(phase);
            int axis = d - 1;
            while (axis >= 0 && ++k[static_cast<std::size_t>(axis)] == degree / 2)
                k[static_cast<std::size_t>(axis--)] = -degree / 2;
        }
    }
    return out;
}

namespace {

int derive_cutoff(double epsilon, double sigma) {
    // Gaussian window truncation estimate: error <= 4 exp(-m pi (1 - 1/(2s-1))).
    const double rate = std::numbers::pi * (1.0 - 1.0 / (2.0 * sigma - 1.0));
    int m = static_cast<int>(std::ceil(std::log(4.0 / epsilon) / rate)) + 1;
    return std::max(m, 2);
}

}  // namespace

NfftPlan::NfftPlan(const NodeSet& nodes, const FrequencyGrid& grid, NfftParams params)
    : grid_(grid), node_count_(nodes.size()), eps_(params.epsilon), fft_(1) {
    if (nodes.dim() != grid.dim())
        throw InvalidArgument("NfftPlan: node and grid dimensions differ");
    if (params.oversampling < 1.25)
        throw InvalidArgument("NfftPlan: oversampling factor must be >= 1.25");
    if (params.epsilon <= 0.0 || params.epsilon >= 1.0)
        throw InvalidArgument("NfftPlan: target accuracy must lie in (0, 1)");

    const int degree = grid.degree();
    int m = params.cutoff > 0 ? params.cutoff : derive_cutoff(eps_, params.oversampling);
    std::size_t n = next_pow2(std::max<std::size_t>(
        static_cast<std::size_t>(std::ceil(params.oversampling * degree)),
        static_cast<std::size_t>(2 * (m + 1))));
    const double sigma_eff = static_cast<double>(n) / degree;
    if (params.cutoff <= 0) m = derive_cutoff(eps_, sigma_eff);
    n_ = static_cast<int>(n);
    m_ = m;
    b_ = (2.0 * sigma_eff * m_) / ((2.0 * sigma_eff - 1.0) * std::numbers::pi);
    fft_ = Fft(n);

    deconv_.resize(static_cast<std::size_t>(degree));
    for (int k = -degree / 2; k < degree / 2; ++k) {
        double u = std::numbers::pi * k / static_cast<double>(n_);
        deconv_[static_cast<std::size_t>(k + degree / 2)] = std::exp(b_ * u * u);
    }

    const int d = grid.dim();
    const int width = 2 * m_ + 1;
    const double win_norm = 1.0 / std::sqrt(std::numbers::pi * b_);
    grid_index_.resize(static_cast<std::size_t>(node_count_) * d * width);
    window_.resize(static_cast<std::size_t>(node_count_) * d * width);
    for (int j = 0; j < node_count_; ++j)
        for (int t = 0; t < d; ++t) {
            const double x = nodes.coord(j, t);
            const long l0 = std::lround(static_cast<double>(n_) * x);
            const std::size_t base =
                (static_cast<std::size_t>(j) * d + static_cast<std::size_t>(t)) * width;
            for (int i = 0; i < width; ++i) {
                const long l = l0 + i - m_;
                const double v = x - static_cast<double>(l) / n_;
                grid_index_[base + static_cast<std::size_t>(i)] =
                    static_cast<int>(((l % n_) + n_) % n_);
                window_[base + static_cast<std::size_t>(i)] =
                    win_norm * std::exp(-(static_cast<double>(n_) * v) *
                                        (static_cast<double>(n_) * v) / b_);
            }
        }
}

SampleVector NfftPlan::forward(const SpectralVector& coeffs) const {
    if (coeffs.grid != grid_)
        throw InvalidArgument("nfft_forward: operand grid does not match plan");
    const int d = grid_.dim();
    const int degree = grid_.degree();
    const std::size_t n = static_cast<std::size_t>(n_);

    std::size_t total = 1;
    for (int t = 0; t < d; ++t) total *= n;
    std::vector<Complex> g(total, Complex(0.0));

    // Deconvolved coefficients placed at wrapped frequency positions.
    std::vector<int> k(static_cast<std::size_t>(d), -degree / 2);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        double factor = 1.0;
        std::size_t idx = 0;
        for (int t = 0; t < d; ++t) {
            const int kt = k[static_cast<std::size_t>(t)];
            factor *= deconv_[static_cast<std::size_t>(kt + degree / 2)];
            idx = idx * n + static_cast<std::size_t>(((kt % n_) + n_) % n_);
        }
        g[idx] = coeffs[i] * factor;
        int axis = d - 1;
        while (axis >= 0 && ++k[static_cast<std::size_t>(axis)] == degree / 2)
            k[static_cast<std::size_t>(axis--)] = -degree / 2;
    }

    fft_nd(g, d, n, fft_, /*inverse=*/true);

    // Local window summation around each node.
    const int width = 2 * m_ + 1;
    SampleVector out(node_count_);
    if (d == 1) {
        for (int j = 0; j < node_count_; ++j) {
            const std::size_t base = static_cast<std::size_t>(j) * width;
            Complex acc = 0.0;
            for (int i = 0; i < width; ++i)
                acc += g[static_cast<std::size_t>(grid_index_[base + static_cast<std::size_t>(i)])] *
                       window_[base + static_cast<std::size_t>(i)];
            out[j] = acc;
        }
    } else if (d == 2) {
        for (int j = 0; j < node_count_; ++j) {
            const std::size_t b0 = static_cast<std::size_t>(j) * 2 * width;
            const std::size_t b1 = b0 + static_cast<std::size_t>(width);
            Complex acc = 0.0;
            for (int i0 = 0; i0 < width; ++i0) {
                const std::size_t row =
                    static_cast<std::size_t>(grid_index_[b0 + static_cast<std::size_t>(i0)]) * n;
                const double w0 = window_[b0 + static_cast<std::size_t>(i0)];
                Complex inner = 0.0;
                for (int i1 = 0; i1 < width; ++i1)
                    inner += g[row + static_cast<std::size_t>(
                                        grid_index_[b1 + static_cast<std::size_t>(i1)])] *
                             window_[b1 + static_cast<std::size_t>(i1)];
                acc += w0 * inner;
            }
            out[j] = acc;
        }
    } else {
        for (int j = 0; j < node_count_; ++j) {
            Complex acc = 0.0;
            std::vector<int> offset(static_cast<std::size_t>(d), 0);
            while (true) {
                std::size_t idx = 0;
                double w = 1.0;
                for (int t = 0; t < d; ++t) {
                    const std::size_t base =
                        (static_cast<std::size_t>(j) * d + static_cast<std::size_t>(t)) * width;
                    idx = idx * n + static_cast<std::size_t>(grid_index_[base + static_cast<std::size_t>(
                                                                                    offset[static_cast<std::size_t>(t)])]);
                    w *= window_[base + static_cast<std::size_t>(offset[static_cast<std::size_t>(t)])];
                }
                acc += g[idx] * w;
                int axis = d - 1;
                while (axis >= 0 && ++offset[static_cast<std::size_t>(axis)] == width)
                    offset[static_cast<std::size_t>(axis--)] = 0;
                if (axis < 0) break;
            }
            out[j] = acc;
        }
    }
    return out;
}

SpectralVector NfftPlan::adjoint(const SampleVector& samples) const {
    if (samples.size() != node_count_)
        throw InvalidArgument("nfft_adjoint: operand length does not match plan");
    const int d = grid_.dim();
    const int degree = grid_.degree();
    const std::size_t n = static_cast<std::size_t>(n_);

    std::size_t total = 1;
    for (int t = 0; t < d; ++t) total *= n;
    std::vector<Complex> g(total, Complex(0.0));

    const int width = 2 * m_ + 1;
    if (d == 1) {
        for (int j = 0; j < node_count_; ++j) {
            const std::size_t base = static_cast<std::size_t>(j) * width;
            const Complex y = samples[j];
            for (int i = 0; i < width; ++i)
                g[static_cast<std::size_t>(grid_index_[base + static_cast<std::size_t>(i)])] +=
                    y * window_[base + static_cast<std::size_t>(i)];
        }
    } else if (d == 2) {
        for (int j = 0; j < node_count_; ++j) {
            const std::size_t b0 = static_cast<std::size_t>(j) * 2 * width;
            const std::size_t b1 = b0 + static_cast<std::size_t>(width);
            const Complex y = samples[j];
            for (int i0 = 0; i0 < width; ++i0) {
                const std::size_t row =
                    static_cast<std::size_t>(grid_index_[b0 + static_cast<std::size_t>(i0)]) * n;
                const Complex partial = y * window_[b0 + static_cast<std::size_t>(i0)];
                for (int i1 = 0; i1 < width; ++i1)
                    g[row + static_cast<std::size_t>(grid_index_[b1 + static_cast<std::size_t>(i1)])] +=
                        partial * window_[b1 + static_cast<std::size_t>(i1)];
            }
        }
    } else {
        for (int j = 0; j < node_count_; ++j) {
            const Complex y = samples[j];
            std::vector<int> offset(static_cast<std::size_t>(d), 0);
            while (true) {
                std::size_t idx = 0;
                double w = 1.0;
                for (int t = 0; t < d; ++t) {
                    const std::size_t base =
                        (static_cast<std::size_t>(j) * d + static_cast<std::size_t>(t)) * width;
                    idx = idx * n + static_cast<std::size_t>(grid_index_[base + static_cast<std::size_t>(
                                                                                    offset[static_cast<std::size_t>(t)])]);
                    w *= window_[base + static_cast<std::size_t>(offset[static_cast<std::size_t>(t)])];
                }
                g[idx] += y * w;
                int axis = d - 1;
                while (axis >= 0 && ++offset[static_cast<std::size_t>(axis)] == width)
                    offset[static_cast<std::size_t>(axis--)] = 0;
                if (axis < 0) break;
            }
        }
    }

    fft_nd(g, d, n, fft_, /*inverse=*/false);

    SpectralVector out(grid_);
    std::vector<int> k(static_cast<std::size_t>(d), -degree / 2);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        double factor = 1.0;
        std::size_t idx = 0;
        for (int t = 0; t < d; ++t) {
            const int kt = k[static_cast<std::size_t>(t)];
            factor *= deconv_[static_cast<std::size_t>(kt + degree / 2)];
            idx = idx * n + static_cast<std::size_t>(((kt % n_) + n_) % n_);
        }
        out[i] = g[idx] * factor;
        int axis = d - 1;
        while (axis >= 0 && ++k[static_cast<std::size_t>(axis)] == degree / 2)
            k[static_cast<std::size_t>(axis--)] = -degree / 2;
    }
    return out;
}

std::vector<Complex> evaluate_on_grid(const SpectralVector& coeffs, int resolution) {
    const FrequencyGrid& grid = coeffs.grid;
    if (resolution < grid.degree() || !is_pow2(static_cast<std::size_t>(resolution)))
        throw InvalidArgument(
            "evaluate_on_grid: resolution must be a power of two >= the degree");
    const int d = grid.dim();
    const int degree = grid.degree();
    const std::size_t r = static_cast<std::size_t>(resolution);
    std::size_t total = 1;
    for (int t = 0; t < d; ++t) total *= r;
    std::vector<Complex> data(total, Complex(0.0));
    std::vector<int> k(static_cast<std::size_t>(d), -degree / 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::size_t idx = 0;
        for (int t = 0; t < d; ++t) {
            const int kt = k[static_cast<std::size_t>(t)];
            idx = idx * r + static_cast<std::size_t>(((kt % resolution) + resolution) %
                                                     resolution);
        }
        data[idx] = coeffs[i];
        int axis = d - 1;
        while (axis >= 0 && ++k[static_cast<std::size_t>(axis)] == degree / 2)
            k[static_cast<std::size_t>(axis--)] = -degree / 2;
    }
    const Fft fft(r);
    fft_nd(data, d, r, fft, /*inverse=*/true);
    return data;
}

SampleVector nfft_forward(const NfftPlan& plan, const SpectralVector& coeffs) {
    return plan.forward(coeffs);
}

SpectralVector nfft_adjoint(const NfftPlan& plan, const SampleVector& samples) {
    return plan.adjoint(samples);
}

FourierOperator::FourierOperator(NodeSet nodes, FrequencyGrid grid, TransformMode mode)
    : nodes_(std::move(nodes)), grid_(grid) {
    bool fast = false;
    double eps = mode.epsilon;
    switch (mode.kind) {
        case TransformMode::Kind::Direct: fast = false; break;
        case TransformMode::Kind::Fast: fast = true; break;
        case TransformMode::Kind::Auto: {
            const double work = static_cast<double>(nodes_.size()) *
                                static_cast<double>(grid_.size());
            fast = work > static_cast<double>(1u << 22);
            eps = 1e-12;
            break;
        }
    }
    if (fast) {
        NfftParams params;
        params.epsilon = eps;
        plan_.emplace(nodes_, grid_, params);
    }
}

SampleVector FourierOperator::forward(const SpectralVector& coeffs) const {
    if (plan_) return plan_->forward(coeffs);
    return ndft_forward(coeffs, nodes_);
}

SpectralVector FourierOperator::adjoint(const SampleVector& samples) const {
    if (plan_) return plan_->adjoint(samples);
    return ndft_adjoint(samples, nodes_, grid_);
}

}  // namespace torinterp
