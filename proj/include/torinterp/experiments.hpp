#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torinterp/geometry.hpp"
#include "torinterp/kernels.hpp"
#include "torinterp/solver.hpp"
#include "torinterp/types.hpp"

namespace torinterp {

/// Configuration mistakes (unknown keys, malformed values, inconsistent
/// parameters). The CLI maps these to exit code 2; numeric failures map
/// to exit code 3.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A kernel family selectable from the CLI: either a closed-form family or
/// a sampled weight function.
struct KernelChoice {
    enum class Family { Dirichlet, Fejer, Jackson, TopHat, Hat, BSpline, Sobolev };

    Family family = Family::Fejer;
    int beta = 2;        // jackson / bspline / sobolev order
    double alpha = 0.5;  // sobolev
    double gamma = 1e-3; // sobolev

    static KernelChoice parse(const std::string& name, int beta, double alpha,
                              double gamma);

    bool has_closed_form() const;
    ClosedKernelSpec closed(int degree) const;  // derives sigma for jackson
    WeightFunctionSpec weight() const;
    DampingFactors damping(int degree, int dim) const;
    std::optional<KernelDecay> decay(int reference_degree) const;
    std::string name() const;
};

enum class ExperimentKind { CondVsDegree, JitterSweep, ErrorDecay, Reconstruct };

ExperimentKind parse_experiment(const std::string& name);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::CondVsDegree;
    KernelChoice kernel;
    int dim = 1;

    enum class NodeSource { Equispaced, Jittered, RandomSeparated, File };
    NodeSource node_source = NodeSource::Equispaced;
    int node_count = 100;       // per-axis n for equispaced, M otherwise
    double jitter = 0.1;
    double separation = 0.004;
    std::string node_file;

    std::vector<int> degrees;   // sweep list; single entry for most runs

    SolverConfig solver;

    std::uint64_t seed = 1;
    std::string out_path = "experiment.csv";

    // reconstruct only
    int holdout = 200;
    std::string samples_file;   // empty selects the synthetic dataset
    std::string normalization = "bounding-box";
    int grid_resolution = 256;
    int synthetic_samples = 2000;
    int synthetic_degree = 64;

    // jitter-sweep only
    int reruns = 100;
    std::vector<int> sizes;
    int degree_factor = 6;

    /// Parse a key=value config file; keys missing from the file keep the
    /// experiment's defaults, unknown keys are rejected.
    static ExperimentConfig from_file(ExperimentKind kind, const std::string& path);

    /// Defaults for the given experiment without reading a file.
    static ExperimentConfig defaults(ExperimentKind kind);

    /// Apply one key=value assignment (also used for CLI overrides).
    void assign(const std::string& key, const std::string& value);

    NodeSet build_nodes() const;
};

/// Scattered samples (x_j, y_j) with canonicalised nodes.
struct ScatteredDataset {
    NodeSet nodes;
    SampleVector values;
    std::string source;
};

/// Read lines of d coordinates plus one value; '#' starts a comment line.
/// bounding-box normalisation maps the coordinates affinely into
/// [-0.45, 0.45]^d, keeping a margin against wrap-around ambiguity.
ScatteredDataset ingest_samples(const std::string& path, int dim,
                                const std::string& normalization);

void export_samples(const ScatteredDataset& data, const std::string& path);

/// Synthetic reconstruction input: samples of a known trigonometric
/// polynomial clustered along level curves of a smooth auxiliary function,
/// mimicking digitised contour data.
struct SyntheticDataset {
    ScatteredDataset data;
    SpectralVector truth;
};

struct SyntheticParams {
    int levels = 24;               // number of level curves
    double band_scale = 0.012;     // band half-width as a fraction of the range
    double min_separation = 0.004; // keeps the Gram matrix regular
    double truth_decay = 6.0;      // polynomial decay power of the truth spectrum
};

SyntheticDataset synthetic_level_curve_dataset(int samples, int truth_degree,
                                               std::uint64_t seed,
                                               const SyntheticParams& params = {});

/// One row per sweep point, 17 significant digits for reals, RFC-4180
/// quoting. Rows must be nonempty.
void export_results(const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows,
                    const std::string& path);

std::string format_real(double value);

struct ReconstructReport {
    double data_residual = 0.0;        // r
    double validation_residual = 0.0;  // r-tilde
    int iterations = 0;
};

struct ExperimentReport {
    std::vector<std::string> files_written;
    std::optional<ReconstructReport> reconstruct;
};

/// Run the configured experiment and write its CSV report(s). Output is a
/// pure function of (config, seed). On a numeric failure mid-sweep the
/// rows computed so far are flushed before the error propagates with the
/// sweep point named.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace torinterp
