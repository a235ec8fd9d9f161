#pragma once

#include <complex>
#include <vector>

#include "torinterp/geometry.hpp"
#include "torinterp/types.hpp"

namespace torinterp {

/// Iterative radix-2 complex FFT with a per-instance twiddle table.
/// forward applies sum_l a_l e^{-2 pi i k l / n}, inverse the conjugate
/// sign; both are unnormalised.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(Complex* data) const { run(data, false); }
    void inverse(Complex* data) const { run(data, true); }

private:
    void run(Complex* data, bool inverse) const;

    std::size_t n_;
    std::vector<Complex> twiddle_;  // e^{-2 pi i j / n}, j < n/2
};

/// Direct evaluation (A f)_j = sum_{k in I_N} f_k e^{2 pi i k.x_j},
/// exact up to rounding.
SampleVector ndft_forward(const SpectralVector& coeffs, const NodeSet& nodes);

/// Direct adjoint (A^H y)_k = sum_j y_j e^{-2 pi i k.x_j}.
SpectralVector ndft_adjoint(const SampleVector& samples, const NodeSet& nodes,
                            const FrequencyGrid& grid);

struct NfftParams {
    double oversampling = 2.0;  // >= 1.25
    int cutoff = 0;             // window cutoff m; 0 = derive from epsilon
    double epsilon = 1e-12;     // target accuracy relative to ||input||_1
};

/// Approximate nonequispaced transforms by Gaussian window gridding:
/// deconvolve by the window transform, oversampled equispaced FFT, local
/// window summation at the nodes; the adjoint reverses the three steps and
/// is the exact adjoint of the forward map.
///
/// Both directions deviate from their direct counterparts by at most
/// epsilon * ||input||_1 per output entry.
class NfftPlan {
public:
    NfftPlan(const NodeSet& nodes, const FrequencyGrid& grid, NfftParams params = {});

    const FrequencyGrid& grid() const { return grid_; }
    int node_count() const { return node_count_; }
    int oversampled_size() const { return n_; }
    int cutoff() const { return m_; }
    double epsilon() const { return eps_; }

    SampleVector forward(const SpectralVector& coeffs) const;
    SpectralVector adjoint(const SampleVector& samples) const;

private:
    FrequencyGrid grid_;
    int node_count_;
    int n_;      // oversampled grid length per axis, power of two
    int m_;      // window cutoff
    double b_;   // Gaussian shape parameter
    double eps_;
    std::vector<double> deconv_;   // e^{b (pi k / n)^2} over one axis of I_N
    std::vector<int> grid_index_;  // node x axis x (2m+1) wrapped grid indices
    std::vector<double> window_;   // node x axis x (2m+1) window values
    Fft fft_;
};

SampleVector nfft_forward(const NfftPlan& plan, const SpectralVector& coeffs);
SpectralVector nfft_adjoint(const NfftPlan& plan, const SampleVector& samples);

/// Values of the polynomial on the regular grid (j/R)_{j in [0,R)^d}, in
/// row-major order, via a zero-padded inverse FFT. R must be a power of two
/// with R >= N.
std::vector<Complex> evaluate_on_grid(const SpectralVector& coeffs, int resolution);

struct TransformMode {
    enum class Kind { Auto, Direct, Fast };
    Kind kind = Kind::Auto;
    double epsilon = 1e-12;

    static TransformMode automatic() { return {Kind::Auto, 1e-12}; }
    static TransformMode direct() { return {Kind::Direct, 0.0}; }
    static TransformMode fast(double epsilon) { return {Kind::Fast, epsilon}; }
};

/// The nonequispaced Fourier matrix A as an operator, with automatic
/// selection between the exact direct path and the fast approximate path
/// (direct while M * N^d stays small).
class FourierOperator {
public:
    FourierOperator(NodeSet nodes, FrequencyGrid grid,
                    TransformMode mode = TransformMode::automatic());

    const FrequencyGrid& grid() const { return grid_; }
    const NodeSet& nodes() const { return nodes_; }
    int node_count() const { return nodes_.size(); }
    bool is_fast() const { return plan_.has_value(); }

    SampleVector forward(const SpectralVector& coeffs) const;
    SpectralVector adjoint(const SampleVector& samples) const;

private:
    NodeSet nodes_;
    FrequencyGrid grid_;
    std::optional<NfftPlan> plan_;
};

}  // namespace torinterp
