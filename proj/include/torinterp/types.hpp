#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace torinterp {

using Complex = std::complex<double>;

/// Complex values attached to sampling nodes, one entry per node.
using SampleVector = Eigen::VectorXcd;

/// Thrown when a configuration or precondition is violated by the caller.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numeric procedure cannot deliver its contract
/// (sampler exhausted, certificate unavailable, breakdown, ...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The frequency index set I_N = {-N/2, ..., N/2-1}^d for even degree N.
///
/// Linearisation is row-major with axis 0 slowest: a multi-index k maps to
///   sum_t (k_t + N/2) * N^(d-1-t).
class FrequencyGrid {
public:
    FrequencyGrid(int dim, int degree) : dim_(dim), degree_(degree) {
        if (dim < 1) throw InvalidArgument("FrequencyGrid: dimension must be >= 1");
        if (degree < 2 || degree % 2 != 0)
            throw InvalidArgument("FrequencyGrid: degree must be even and >= 2");
        size_ = 1;
        for (int t = 0; t < dim; ++t) size_ *= static_cast<std::size_t>(degree);
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    std::size_t size() const { return size_; }

    int min_index() const { return -degree_ / 2; }
    int max_index() const { return degree_ / 2 - 1; }

    std::size_t linear_index(const std::vector<int>& k) const {
        std::size_t idx = 0;
        for (int t = 0; t < dim_; ++t)
            idx = idx * static_cast<std::size_t>(degree_) +
                  static_cast<std::size_t>(k[static_cast<std::size_t>(t)] + degree_ / 2);
        return idx;
    }

    std::vector<int> multi_index(std::size_t linear) const {
        std::vector<int> k(static_cast<std::size_t>(dim_));
        for (int t = dim_ - 1; t >= 0; --t) {
            k[static_cast<std::size_t>(t)] =
                static_cast<int>(linear % static_cast<std::size_t>(degree_)) - degree_ / 2;
            linear /= static_cast<std::size_t>(degree_);
        }
        return k;
    }

    bool operator==(const FrequencyGrid& other) const {
        return dim_ == other.dim_ && degree_ == other.degree_;
    }
    bool operator!=(const FrequencyGrid& other) const { return !(*this == other); }

private:
    int dim_;
    int degree_;
    std::size_t size_;
};

/// Fourier coefficients over a frequency grid, stored in the grid's
/// linear order.
struct SpectralVector {
    FrequencyGrid grid;
    Eigen::VectorXcd coeffs;

    explicit SpectralVector(const FrequencyGrid& g)
        : grid(g), coeffs(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.size()))) {}

    SpectralVector(const FrequencyGrid& g, Eigen::VectorXcd values)
        : grid(g), coeffs(std::move(values)) {
        if (static_cast<std::size_t>(coeffs.size()) != grid.size())
            throw InvalidArgument("SpectralVector: coefficient count does not match grid");
    }

    Complex& operator[](std::size_t i) { return coeffs[static_cast<Eigen::Index>(i)]; }
    const Complex& operator[](std::size_t i) const {
        return coeffs[static_cast<Eigen::Index>(i)];
    }
};

}  // namespace torinterp
