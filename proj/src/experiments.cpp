#include "torinterp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "torinterp/rng.hpp"
#include "torinterp/stability.hpp"
#include "torinterp/transform.hpp"

namespace torinterp {

namespace {

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

// "a,b,c" or "start:stop:step".
std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    if (value.find(':') != std::string::npos) {
        int parts[3] = {0, 0, 0};
        std::istringstream s(value);
        std::string field;
        int i = 0;
        while (std::getline(s, field, ':')) {
            if (i >= 3) throw ConfigError("config: range '" + value + "' has too many fields");
            parts[i++] = parse_int(key, field);
        }
        if (i != 3) throw ConfigError("config: range '" + value + "' needs start:stop:step");
        if (parts[2] <= 0) throw ConfigError("config: range step must be positive");
        for (int v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
    } else {
        std::istringstream s(value);
        std::string field;
        while (std::getline(s, field, ',')) out.push_back(parse_int(key, field));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' has an empty list");
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

KernelChoice KernelChoice::parse(const std::string& name, int beta, double alpha,
                                 double gamma) {
    KernelChoice choice;
    choice.beta = beta;
    choice.alpha = alpha;
    choice.gamma = gamma;
    if (name == "dirichlet") choice.family = Family::Dirichlet;
    else if (name == "fejer") choice.family = Family::Fejer;
    else if (name == "jackson") choice.family = Family::Jackson;
    else if (name == "top-hat") choice.family = Family::TopHat;
    else if (name == "hat") choice.family = Family::Hat;
    else if (name == "bspline") choice.family = Family::BSpline;
    else if (name == "sobolev") choice.family = Family::Sobolev;
    else throw ConfigError("config: unknown kernel '" + name + "'");
    return choice;
}

bool KernelChoice::has_closed_form() const {
    return family == Family::Dirichlet || family == Family::Fejer ||
           family == Family::Jackson;
}

ClosedKernelSpec KernelChoice::closed(int degree) const {
    switch (family) {
        case Family::Dirichlet: return ClosedKernelSpec::dirichlet();
        case Family::Fejer: return ClosedKernelSpec::fejer();
        case Family::Jackson: {
            if (beta < 2 || beta % 2 != 0)
                throw InvalidArgument("jackson kernel: beta must be even and >= 2");
            if ((degree - 2) % beta != 0 || (degree - 2) / beta + 1 < 1)
                throw InvalidArgument(
                    "jackson kernel: degree " + std::to_string(degree) +
                    " is not of the form beta*(sigma-1)+2 for beta = " +
                    std::to_string(beta));
            return ClosedKernelSpec::jackson(beta, (degree - 2) / beta + 1);
        }
        default:
            throw InvalidArgument("kernel family has no closed form");
    }
}

WeightFunctionSpec KernelChoice::weight() const {
    switch (family) {
        case Family::TopHat: return WeightFunctionSpec::top_hat();
        case Family::Hat: return WeightFunctionSpec::hat();
        case Family::BSpline: return WeightFunctionSpec::bspline(beta);
        case Family::Sobolev: return WeightFunctionSpec::sobolev(alpha, beta, gamma);
        default:
            throw InvalidArgument("kernel family is not weight-function based");
    }
}

DampingFactors KernelChoice::damping(int degree, int dim) const {
    DampingFactors base = has_closed_form() ? damping_closed(closed(degree), degree)
                                            : damping_from_weight(weight(), degree);
    return tensorize(base, dim);
}

std::optional<KernelDecay> KernelChoice::decay(int reference_degree) const {
    if (has_closed_form()) {
        if (family == Family::Jackson) return decay_profile(ClosedKernelSpec::jackson(
            beta, 2));  // constant depends only on beta
        return decay_profile(family == Family::Dirichlet ? ClosedKernelSpec::dirichlet()
                                                         : ClosedKernelSpec::fejer());
    }
    return decay_profile(weight(), reference_degree);
}

std::string KernelChoice::name() const {
    switch (family) {
        case Family::Dirichlet: return "dirichlet";
        case Family::Fejer: return "fejer";
        case Family::Jackson: return "jackson(" + std::to_string(beta) + ")";
        case Family::TopHat: return "top-hat";
        case Family::Hat: return "hat";
        case Family::BSpline: return "bspline(" + std::to_string(beta) + ")";
        case Family::Sobolev: {
            std::ostringstream s;
            s << "sobolev(" << alpha << "," << beta << "," << gamma << ")";
            return s.str();
        }
    }
    return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
    if (name == "cond-vs-degree") return ExperimentKind::CondVsDegree;
    if (name == "jitter-sweep") return ExperimentKind::JitterSweep;
    if (name == "error-decay") return ExperimentKind::ErrorDecay;
    if (name == "reconstruct") return ExperimentKind::Reconstruct;
    throw ConfigError("config: unknown experiment '" + name + "'");
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.experiment = kind;
    switch (kind) {
        case ExperimentKind::CondVsDegree:
            cfg.kernel = KernelChoice::parse("dirichlet", 2, 0.5, 1e-3);
            cfg.dim = 1;
            cfg.node_source = NodeSource::Equispaced;
            cfg.node_count = 100;
            cfg.degrees = {100, 200, 300, 400, 500, 600};
            cfg.out_path = "cond_vs_degree.csv";
            break;
        case ExperimentKind::JitterSweep:
            cfg.kernel = KernelChoice::parse("fejer", 2, 0.5, 1e-3);
            cfg.dim = 1;
            cfg.node_source = NodeSource::Jittered;
            cfg.jitter = 0.1;
            cfg.sizes = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
            cfg.reruns = 100;
            cfg.degree_factor = 6;
            cfg.out_path = "jitter_sweep.csv";
            break;
        case ExperimentKind::ErrorDecay:
            cfg.kernel = KernelChoice::parse("fejer", 2, 0.5, 1e-3);
            cfg.dim = 1;
            cfg.node_source = NodeSource::RandomSeparated;
            cfg.node_count = 100;
            cfg.separation = 0.004;
            cfg.degrees = {1000};
            cfg.solver.max_iterations = 20;
            cfg.solver.residual_tolerance = 1e-14;
            cfg.out_path = "error_decay.csv";
            break;
        case ExperimentKind::Reconstruct:
            cfg.kernel = KernelChoice::parse("sobolev", 3, 0.5, 1e-3);
            cfg.dim = 2;
            cfg.node_source = NodeSource::File;  // nodes come with the samples
            cfg.degrees = {128};
            cfg.solver.max_iterations = 40;
            cfg.solver.residual_tolerance = 0.0;
            cfg.holdout = 200;
            cfg.out_path = "reconstruct.csv";
            break;
    }
    return cfg;
}

void ExperimentConfig::assign(const std::string& key, const std::string& value) {
    if (key == "experiment") {
        if (parse_experiment(value) != experiment)
            throw ConfigError("config: experiment '" + value +
                              "' does not match the chosen subcommand");
    } else if (key == "kernel") {
        kernel = KernelChoice::parse(value, kernel.beta, kernel.alpha, kernel.gamma);
    } else if (key == "beta") {
        kernel.beta = parse_int(key, value);
    } else if (key == "alpha") {
        kernel.alpha = parse_real(key, value);
    } else if (key == "gamma") {
        kernel.gamma = parse_real(key, value);
    } else if (key == "dim") {
        dim = parse_int(key, value);
    } else if (key == "nodes") {
        if (value == "equispaced") node_source = NodeSource::Equispaced;
        else if (value == "jittered") node_source = NodeSource::Jittered;
        else if (value == "random-q") node_source = NodeSource::RandomSeparated;
        else if (value == "file") node_source = NodeSource::File;
        else throw ConfigError("config: unknown node source '" + value + "'");
    } else if (key == "nodes-count") {
        node_count = parse_int(key, value);
    } else if (key == "jitter") {
        jitter = parse_real(key, value);
    } else if (key == "separation") {
        separation = parse_real(key, value);
    } else if (key == "node-file") {
        node_file = value;
    } else if (key == "degree") {
        degrees = {parse_int(key, value)};
    } else if (key == "degrees") {
        degrees = parse_int_list(key, value);
    } else if (key == "max-iterations") {
        solver.max_iterations = parse_int(key, value);
    } else if (key == "tolerance") {
        solver.residual_tolerance = parse_real(key, value);
    } else if (key == "transform") {
        if (value == "auto") solver.transform = TransformMode::automatic();
        else if (value == "direct") solver.transform = TransformMode::direct();
        else if (value == "fast") solver.transform = TransformMode::fast(solver.transform.epsilon);
        else throw ConfigError("config: unknown transform mode '" + value + "'");
    } else if (key == "fast-epsilon") {
        solver.transform.epsilon = parse_real(key, value);
    } else if (key == "holdout") {
        holdout = parse_int(key, value);
    } else if (key == "samples-file") {
        samples_file = value;
    } else if (key == "normalization") {
        if (value != "none" && value != "bounding-box")
            throw ConfigError("config: normalization must be 'none' or 'bounding-box'");
        normalization = value;
    } else if (key == "grid-resolution") {
        grid_resolution = parse_int(key, value);
    } else if (key == "synthetic-samples") {
        synthetic_samples = parse_int(key, value);
    } else if (key == "synthetic-degree") {
        synthetic_degree = parse_int(key, value);
    } else if (key == "reruns") {
        reruns = parse_int(key, value);
    } else if (key == "sizes") {
        sizes = parse_int_list(key, value);
    } else if (key == "degree-factor") {
        degree_factor = parse_int(key, value);
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "out") {
        out_path = value;
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

ExperimentConfig ExperimentConfig::from_file(ExperimentKind kind, const std::string& path) {
    ExperimentConfig cfg = defaults(kind);
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " of '" + path +
                              "' is not key=value");
        cfg.assign(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

NodeSet ExperimentConfig::build_nodes() const {
    NodeGenSpec spec;
    spec.dim = dim;
    switch (node_source) {
        case NodeSource::Equispaced:
            spec.kind = EquispacedSpec{node_count};
            break;
        case NodeSource::Jittered:
            spec.kind = JitteredSpec{node_count, jitter};
            break;
        case NodeSource::RandomSeparated:
            spec.kind = RandomSeparatedSpec{node_count, separation};
            break;
        case NodeSource::File:
            if (node_file.empty())
                throw ConfigError("config: node source 'file' needs node-file=");
            return load_nodes(node_file, dim);
    }
    return generate_nodes(spec, seed);
}

ScatteredDataset ingest_samples(const std::string& path, int dim,
                                const std::string& normalization) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("ingest_samples: cannot open '" + path + "'");
    std::vector<double> coords;
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream fields(t);
        std::vector<double> row;
        double v;
        while (fields >> v) row.push_back(v);
        if (static_cast<int>(row.size()) != dim + 1)
            throw InvalidArgument("ingest_samples: line " + std::to_string(lineno) +
                                  " of '" + path + "' has " + std::to_string(row.size()) +
                                  " fields, expected " + std::to_string(dim + 1));
        for (int t2 = 0; t2 < dim; ++t2) coords.push_back(row[static_cast<std::size_t>(t2)]);
        values.push_back(row[static_cast<std::size_t>(dim)]);
    }
    if (values.empty()) throw InvalidArgument("ingest_samples: '" + path + "' is empty");

    const int m = static_cast<int>(values.size());
    if (normalization == "bounding-box") {
        for (int t = 0; t < dim; ++t) {
            double lo = coords[static_cast<std::size_t>(t)];
            double hi = lo;
            for (int j = 0; j < m; ++j) {
                const double c = coords[static_cast<std::size_t>(j) * dim + t];
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            for (int j = 0; j < m; ++j) {
                double& c = coords[static_cast<std::size_t>(j) * dim + t];
                c = (hi == lo) ? 0.0 : -0.45 + 0.9 * (c - lo) / (hi - lo);
            }
        }
    }

    ScatteredDataset data{NodeSet(dim, std::move(coords)), SampleVector(m), path};
    for (int j = 0; j < m; ++j) data.values[j] = values[static_cast<std::size_t>(j)];
    return data;
}

void export_samples(const ScatteredDataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw NumericError("export_samples: cannot open '" + path + "'");
    for (int j = 0; j < data.nodes.size(); ++j) {
        for (int t = 0; t < data.nodes.dim(); ++t)
            out << format_real(data.nodes.coord(j, t)) << ' ';
        out << format_real(data.values[j].real()) << '\n';
    }
    if (!out) throw NumericError("export_samples: write to '" + path + "' failed");
}

namespace {

// Real trigonometric polynomial with Hermitian-symmetric random
// coefficients and polynomial magnitude decay.
SpectralVector random_real_polynomial(int dim, int degree, CounterRng& rng,
                                      double decay_power) {
    FrequencyGrid grid(dim, degree);
    SpectralVector f(grid);
    std::vector<int> k(static_cast<std::size_t>(dim));
    std::vector<int> neg(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        k = grid.multi_index(i);
        // Leave the unmatched boundary indices -N/2 at zero so that the
        // conjugate partner of every nonzero coefficient exists.
        bool boundary = false;
        for (int t = 0; t < dim; ++t)
            boundary = boundary || k[static_cast<std::size_t>(t)] == grid.min_index();
        if (boundary) continue;
        bool positive = false, negative = false;
        for (int t = 0; t < dim && !positive && !negative; ++t) {
            if (k[static_cast<std::size_t>(t)] > 0) positive = true;
            if (k[static_cast<std::size_t>(t)] < 0) negative = true;
        }
        if (negative) continue;  // filled by the conjugate of the mirror index
        double norm_sq = 0.0;
        for (int t = 0; t < dim; ++t) {
            neg[static_cast<std::size_t>(t)] = -k[static_cast<std::size_t>(t)];
            norm_sq += static_cast<double>(k[static_cast<std::size_t>(t)]) *
                       k[static_cast<std::size_t>(t)];
        }
        const double scale = std::pow(1.0 + norm_sq, -decay_power / 2.0);
        if (!positive) {
            f[i] = Complex(scale * rng.next_in(-1.0, 1.0), 0.0);  // k = 0 stays real
        } else {
            const Complex c(scale * rng.next_in(-1.0, 1.0), scale * rng.next_in(-1.0, 1.0));
            f[i] = c;
            f[grid.linear_index(neg)] = std::conj(c);
        }
    }
    return f;
}

double eval_real_polynomial(const SpectralVector& f, const double* point) {
    const FrequencyGrid& grid = f.grid;
    const int d = grid.dim();
    const int degree = grid.degree();
    std::vector<Complex> tables(static_cast<std::size_t>(d) *
                                static_cast<std::size_t>(degree));
    for (int t = 0; t < d; ++t)
        for (int k = -degree / 2; k < degree / 2; ++k)
            tables[static_cast<std::size_t>(t) * degree +
                   static_cast<std::size_t>(k + degree / 2)] =
                std::polar(1.0, 2.0 * std::numbers::pi * k * point[t]);
    std::vector<int> k(static_cast<std::size_t>(d), -degree / 2);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (f[i] != Complex(0.0)) {
            Complex phase = tables[static_cast<std::size_t>(k[0] + degree / 2)];
            for (int t = 1; t < d; ++t)
                phase *= tables[static_cast<std::size_t>(t) * degree +
                                static_cast<std::size_t>(
                                    k[static_cast<std::size_t>(t)] + degree / 2)];
            acc += f[i] * phase;
        }
        int axis = d - 1;
        while (axis >= 0 && ++k[static_cast<std::size_t>(axis)] == degree / 2)
            k[static_cast<std::size_t>(axis--)] = -degree / 2;
    }
    return acc.real();
}

}  // namespace

SyntheticDataset synthetic_level_curve_dataset(int samples, int truth_degree,
                                               std::uint64_t seed,
                                               const SyntheticParams& params) {
    if (samples < 1) throw InvalidArgument("synthetic dataset: need samples >= 1");
    if (truth_degree < 2 || truth_degree % 2 != 0)
        throw InvalidArgument("synthetic dataset: truth degree must be even and >= 2");
    if (params.levels < 1 || params.band_scale <= 0.0 || params.min_separation <= 0.0)
        throw InvalidArgument("synthetic dataset: malformed generator parameters");
    const int dim = 2;
    CounterRng rng(seed);
    SpectralVector truth =
        random_real_polynomial(dim, truth_degree, rng, params.truth_decay);
    SpectralVector shape = random_real_polynomial(dim, 8, rng, 1.0);

    // Range of the shape function, probed on a coarse grid.
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            const double p[2] = {-0.5 + i / 64.0, -0.5 + j / 64.0};
            const double v = eval_real_polynomial(shape, p);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const int level_count = params.levels;
    std::vector<double> levels(static_cast<std::size_t>(level_count));
    for (int l = 0; l < level_count; ++l)
        levels[static_cast<std::size_t>(l)] =
            lo + (hi - lo) * (0.1 + 0.8 * l / (level_count - 1.0));
    const double band = params.band_scale * (hi - lo);  // half-width of each band
    const double min_sep = params.min_separation;

    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(samples) * dim);
    long long budget = 10000LL * samples;
    int accepted = 0;
    while (accepted < samples) {
        if (budget-- <= 0)
            throw NumericError("synthetic dataset: level-curve sampler exhausted retries");
        const double p[2] = {rng.next_in(-0.5, 0.5), rng.next_in(-0.5, 0.5)};
        const double v = eval_real_polynomial(shape, p);
        bool on_curve = false;
        for (double level : levels)
            if (std::abs(v - level) <= band) {
                on_curve = true;
                break;
            }
        if (!on_curve) continue;
        bool separated = true;
        for (int j = 0; j < accepted && separated; ++j) {
            double dist = 0.0;
            for (int t = 0; t < dim; ++t) {
                double diff = p[t] - coords[static_cast<std::size_t>(j) * dim + t];
                diff -= std::round(diff);
                dist = std::max(dist, std::abs(diff));
            }
            separated = dist >= min_sep;
        }
        if (!separated) continue;
        coords.push_back(p[0]);
        coords.push_back(p[1]);
        ++accepted;
    }

    ScatteredDataset data{NodeSet(dim, std::move(coords)), SampleVector(samples),
                          "synthetic"};
    data.values = ndft_forward(truth, data.nodes);
    return {std::move(data), std::move(truth)};
}

std::string format_real(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_csv_line(std::ofstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(cells[i]);
    }
    out << '\n';
}

}  // namespace

void export_results(const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows,
                    const std::string& path) {
    if (rows.empty()) throw InvalidArgument("export_results: no rows to write");
    std::ofstream out(path);
    if (!out) throw NumericError("export_results: cannot open '" + path + "'");
    write_csv_line(out, header);
    for (const auto& row : rows) write_csv_line(out, row);
    out.flush();
    if (!out) throw NumericError("export_results: write to '" + path + "' failed");
}

namespace {

KernelMatrix assemble_matrix(const KernelChoice& kernel, int degree,
                             const NodeSet& nodes) {
    if (kernel.has_closed_form())
        return kernel_matrix_closed(kernel.closed(degree), degree, nodes);
    return kernel_matrix(nodes, kernel.damping(degree, nodes.dim()));
}

/// Best available a-priori bracket for the configured kernel on this node
/// set, or nothing when no hypothesis applies.
std::optional<EigenBounds> theorem_bracket(const ExperimentConfig& cfg,
                                           const NodeSet& nodes, int degree) {
    try {
        if (cfg.node_source == ExperimentConfig::NodeSource::Equispaced &&
            cfg.kernel.has_closed_form() &&
            cfg.kernel.family != KernelChoice::Family::Jackson) {
            const double q = 1.0 / cfg.node_count;
            return equispaced_closed_bounds(cfg.kernel.closed(degree), degree, q,
                                            nodes.dim());
        }
        const auto decay = cfg.kernel.decay(degree);
        if (!decay) return std::nullopt;
        const double q = separation_distance(nodes);
        return separated_bounds(nodes.dim(), *decay, degree, q);
    } catch (const std::exception&) {
        return std::nullopt;  // hypotheses not met; report only measurements
    }
}

ExperimentReport run_cond_vs_degree(const ExperimentConfig& cfg) {
    const NodeSet nodes = cfg.build_nodes();
    const std::vector<std::string> header = {
        "degree",      "lambda_min",  "lambda_max",  "cond",
        "bound_lower", "bound_upper", "bound_cond",  "bound_provenance"};
    std::vector<std::vector<std::string>> rows;
    try {
        for (int degree : cfg.degrees) {
            const KernelMatrix k = assemble_matrix(cfg.kernel, degree, nodes);
            const EigenBounds measured = dense_extremal_eigs(k);
            std::vector<std::string> row = {
                std::to_string(degree), format_real(measured.lower),
                format_real(measured.upper), format_real(measured.condition())};
            if (const auto bound = theorem_bracket(cfg, nodes, degree);
                bound && bound->certifies_positive()) {
                row.push_back(format_real(bound->lower));
                row.push_back(format_real(bound->upper));
                row.push_back(format_real(bound->condition()));
                row.push_back(provenance_name(bound->provenance));
            } else {
                row.insert(row.end(), {"", "", "", "none"});
            }
            rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        if (!rows.empty()) export_results(header, rows, cfg.out_path);
        throw NumericError("cond-vs-degree: failure at sweep point N = " +
                           std::to_string(cfg.degrees[rows.size()]) + ": " + e.what());
    }
    export_results(header, rows, cfg.out_path);
    return {{cfg.out_path}, std::nullopt};
}

ExperimentReport run_jitter_sweep(const ExperimentConfig& cfg) {
    const std::vector<std::string> header = {
        "size",           "degree",          "cond_max_kernel",
        "cond_max_dirichlet", "bound_cond_kernel"};
    std::vector<std::vector<std::string>> rows;
    CounterRng seeder(cfg.seed);
    try {
        for (int size : cfg.sizes) {
            const int degree = cfg.degree_factor * size;
            if (degree % 2 != 0)
                throw InvalidArgument("jitter-sweep: degree factor * size must be even");
            double cond_kernel = 0.0, cond_dirichlet = 0.0;
            for (int run = 0; run < cfg.reruns; ++run) {
                NodeGenSpec spec;
                spec.dim = 1;
                spec.kind = JitteredSpec{size, cfg.jitter};
                const NodeSet nodes = generate_nodes(spec, seeder.next_u64());
                const EigenBounds ek =
                    dense_extremal_eigs(assemble_matrix(cfg.kernel, degree, nodes));
                cond_kernel = std::max(cond_kernel, ek.condition());
                const EigenBounds ed = dense_extremal_eigs(kernel_matrix_closed(
                    ClosedKernelSpec::dirichlet(), degree, nodes));
                cond_dirichlet = std::max(cond_dirichlet, ed.condition());
            }
            std::vector<std::string> row = {
                std::to_string(size), std::to_string(degree), format_real(cond_kernel),
                format_real(cond_dirichlet)};
            std::string bound_cell;
            if (const auto decay = cfg.kernel.decay(degree)) {
                try {
                    const EigenBounds b = jitter_bounds(*decay, degree, size, cfg.jitter);
                    if (b.certifies_positive()) bound_cell = format_real(b.condition());
                } catch (const std::exception&) {
                }
            }
            row.push_back(bound_cell);
            rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        if (!rows.empty()) export_results(header, rows, cfg.out_path);
        throw NumericError("jitter-sweep: failure at sweep point M = " +
                           std::to_string(cfg.sizes[rows.size()]) + ": " + e.what());
    }
    export_results(header, rows, cfg.out_path);
    return {{cfg.out_path}, std::nullopt};
}

ExperimentReport run_error_decay(const ExperimentConfig& cfg) {
    const NodeSet nodes = cfg.build_nodes();
    const int degree = cfg.degrees.front();
    const int m = nodes.size();

    CounterRng rng(cfg.seed ^ 0x5ca1ab1eULL);
    SampleVector y(m);
    for (int j = 0; j < m; ++j) y[j] = rng.next_in(-1.0, 1.0);

    const DampingFactors w = cfg.kernel.damping(degree, nodes.dim());
    const KernelMatrix k = assemble_matrix(cfg.kernel, degree, nodes);
    const EigenBounds dense = dense_extremal_eigs(k);
    const SpectralVector reference = dense_min_norm_solution(nodes, y, w);

    SolverConfig solver = cfg.solver;
    solver.record_history = true;
    const SolveResult run = cgne(nodes, y, w, solver, &reference);

    const double e0 = run.error_history.empty() ? 0.0 : run.error_history.front();
    std::optional<EigenBounds> cert;
    if (const auto decay = cfg.kernel.decay(degree)) {
        try {
            const EigenBounds b =
                separated_bounds(nodes.dim(), *decay, degree, separation_distance(nodes));
            if (b.certifies_positive()) cert = b;
        } catch (const std::exception&) {
        }
    }

    const std::vector<std::string> header = {"iteration", "residual", "error",
                                             "bound_dense", "bound_certified"};
    std::vector<std::vector<std::string>> rows;
    for (std::size_t l = 0; l < run.error_history.size(); ++l) {
        std::vector<std::string> row = {
            std::to_string(l),
            l < run.residual_history.size() ? format_real(run.residual_history[l]) : "",
            format_real(run.error_history[l]),
            format_real(apriori_error_bound(dense.lower, dense.upper,
                                            static_cast<int>(l), e0))};
        row.push_back(cert ? format_real(apriori_error_bound(
                                 cert->lower, cert->upper, static_cast<int>(l), e0))
                           : "");
        rows.push_back(std::move(row));
    }
    export_results(header, rows, cfg.out_path);
    return {{cfg.out_path}, std::nullopt};
}

ExperimentReport run_reconstruct(const ExperimentConfig& cfg) {
    ScatteredDataset data =
        cfg.samples_file.empty()
            ? synthetic_level_curve_dataset(cfg.synthetic_samples, cfg.synthetic_degree,
                                            cfg.seed).data
            : ingest_samples(cfg.samples_file, cfg.dim, cfg.normalization);
    const int m = data.nodes.size();
    if (cfg.holdout < 0 || cfg.holdout >= m)
        throw ConfigError("reconstruct: holdout must lie in [0, M)");
    const int degree = cfg.degrees.front();

    // Uniformly random holdout, drawn with the config seed.
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j;
    CounterRng rng(cfg.seed ^ 0xb0a710adULL);
    for (int j = m - 1; j > 0; --j) {
        const int pick = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(j + 1));
        std::swap(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(pick)]);
    }
    std::vector<int> hold(order.begin(), order.begin() + cfg.holdout);
    std::vector<int> train(order.begin() + cfg.holdout, order.end());
    std::sort(hold.begin(), hold.end());
    std::sort(train.begin(), train.end());

    const NodeSet train_nodes = data.nodes.subset(train);
    SampleVector train_values(static_cast<int>(train.size()));
    for (std::size_t i = 0; i < train.size(); ++i)
        train_values[static_cast<Eigen::Index>(i)] = data.values[train[i]];

    const DampingFactors w = cfg.kernel.damping(degree, data.nodes.dim());
    const SolveResult run = cgne(train_nodes, train_values, w, cfg.solver);

    const double y_norm = data.values.norm();
    const FourierOperator train_op(train_nodes, w.grid(), cfg.solver.transform);
    const double r =
        (train_values - train_op.forward(run.coefficients)).norm() / y_norm;

    double r_tilde = 0.0;
    if (!hold.empty()) {
        const NodeSet hold_nodes = data.nodes.subset(hold);
        SampleVector hold_values(static_cast<int>(hold.size()));
        for (std::size_t i = 0; i < hold.size(); ++i)
            hold_values[static_cast<Eigen::Index>(i)] = data.values[hold[i]];
        const FourierOperator hold_op(hold_nodes, w.grid(), cfg.solver.transform);
        r_tilde = (hold_values - hold_op.forward(run.coefficients)).norm() / y_norm;
    }

    const std::vector<std::string> header = {
        "samples",   "holdout",   "degree",        "iterations",
        "converged", "residual",  "validation",    "weighted_norm"};
    std::vector<std::vector<std::string>> rows = {{
        std::to_string(m), std::to_string(cfg.holdout), std::to_string(degree),
        std::to_string(run.iterations_used), run.converged ? "1" : "0",
        format_real(r), format_real(r_tilde), format_real(run.weighted_norm)}};
    export_results(header, rows, cfg.out_path);

    // Coefficient vector for downstream evaluation.
    const std::string coeff_path = cfg.out_path + ".coeffs.csv";
    {
        std::vector<std::string> coeff_header;
        for (int t = 0; t < data.nodes.dim(); ++t)
            coeff_header.push_back("k" + std::to_string(t));
        coeff_header.push_back("re");
        coeff_header.push_back("im");
        std::vector<std::vector<std::string>> coeff_rows;
        const FrequencyGrid grid = run.coefficients.grid;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto k = grid.multi_index(i);
            std::vector<std::string> row;
            for (int t = 0; t < grid.dim(); ++t)
                row.push_back(std::to_string(k[static_cast<std::size_t>(t)]));
            row.push_back(format_real(run.coefficients[i].real()));
            row.push_back(format_real(run.coefficients[i].imag()));
            coeff_rows.push_back(std::move(row));
        }
        export_results(coeff_header, coeff_rows, coeff_path);
    }

    // Regular-grid evaluation for contour plots.
    const std::string grid_path = cfg.out_path + ".grid.csv";
    {
        const int resolution = cfg.grid_resolution;
        const auto values = evaluate_on_grid(run.coefficients, resolution);
        std::vector<std::string> grid_header;
        for (int t = 0; t < data.nodes.dim(); ++t)
            grid_header.push_back("x" + std::to_string(t));
        grid_header.push_back("value");
        std::vector<std::vector<std::string>> grid_rows;
        grid_rows.reserve(values.size());
        std::vector<int> idx(static_cast<std::size_t>(data.nodes.dim()), 0);
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::vector<std::string> row;
            for (int t = 0; t < data.nodes.dim(); ++t)
                row.push_back(format_real(canonical_coord(
                    static_cast<double>(idx[static_cast<std::size_t>(t)]) / resolution)));
            row.push_back(format_real(values[i].real()));
            grid_rows.push_back(std::move(row));
            int axis = data.nodes.dim() - 1;
            while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == resolution)
                idx[static_cast<std::size_t>(axis--)] = 0;
        }
        export_results(grid_header, grid_rows, grid_path);
    }

    ExperimentReport report{{cfg.out_path, coeff_path, grid_path}, std::nullopt};
    report.reconstruct = ReconstructReport{r, r_tilde, run.iterations_used};
    return report;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment == ExperimentKind::JitterSweep) {
        if (cfg.sizes.empty()) throw ConfigError("config: jitter-sweep needs sizes=");
        if (cfg.reruns < 1) throw ConfigError("config: reruns must be >= 1");
    } else {
        if (cfg.degrees.empty()) throw ConfigError("config: no polynomial degree given");
        for (int degree : cfg.degrees)
            if (degree < 2 || degree % 2 != 0)
                throw ConfigError("config: degrees must be even and >= 2");
    }
    switch (cfg.experiment) {
        case ExperimentKind::CondVsDegree: return run_cond_vs_degree(cfg);
        case ExperimentKind::JitterSweep: return run_jitter_sweep(cfg);
        case ExperimentKind::ErrorDecay: return run_error_decay(cfg);
        case ExperimentKind::Reconstruct: return run_reconstruct(cfg);
    }
    throw ConfigError("config: unknown experiment kind");
}

}  // namespace torinterp
