#include "torinterp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "torinterp/rng.hpp"

namespace torinterp {

double canonical_coord(double x) {
    double r = x - std::floor(x + 0.5);  // into [-1/2, 1/2]
    if (r >= 0.5) r -= 1.0;              // right endpoint wraps
    return r;
}

TorusPoint canonical(TorusPoint p) {
    for (double& c : p.coords) c = canonical_coord(c);
    return p;
}

namespace {

// Wrap-around distance of a single coordinate difference, in [0, 1/2].
inline double wrap_abs(double diff) {
    double r = diff - std::round(diff);
    return std::abs(r);
}

inline double dist_flat(const std::vector<double>& a, std::size_t ia,
                        const std::vector<double>& b, std::size_t ib, int dim) {
    double m = 0.0;
    for (int t = 0; t < dim; ++t) {
        double v = wrap_abs(a[ia + static_cast<std::size_t>(t)] -
                            b[ib + static_cast<std::size_t>(t)]);
        if (v > m) m = v;
    }
    return m;
}

}  // namespace

double torus_dist(const TorusPoint& x, const TorusPoint& y) {
    if (x.dim() != y.dim())
        throw InvalidArgument("torus_dist: dimension mismatch");
    double m = 0.0;
    for (int t = 0; t < x.dim(); ++t) {
        double v = wrap_abs(x.coords[static_cast<std::size_t>(t)] -
                            y.coords[static_cast<std::size_t>(t)]);
        if (v > m) m = v;
    }
    return m;
}

NodeSet::NodeSet(int dim, std::vector<double> flat_coords)
    : dim_(dim), coords_(std::move(flat_coords)) {
    if (dim_ < 1) throw InvalidArgument("NodeSet: dimension must be >= 1");
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim_) != 0)
        throw InvalidArgument("NodeSet: coordinate count not a multiple of the dimension");
    for (double& c : coords_) c = canonical_coord(c);

    // Exact duplicates (after canonicalisation) make q = 0 and are rejected.
    const int m = size();
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](int a, int b) {
        for (int t = 0; t < dim_; ++t) {
            double ca = coord(a, t), cb = coord(b, t);
            if (ca != cb) return ca < cb;
        }
        return false;
    };
    std::sort(order.begin(), order.end(), less);
    for (int i = 0; i + 1 < m; ++i) {
        bool equal = true;
        for (int t = 0; t < dim_ && equal; ++t)
            equal = coord(order[static_cast<std::size_t>(i)], t) ==
                    coord(order[static_cast<std::size_t>(i + 1)], t);
        if (equal) throw InvalidArgument("NodeSet: duplicate nodes");
    }
}

TorusPoint NodeSet::point(int node) const {
    TorusPoint p;
    p.coords.resize(static_cast<std::size_t>(dim_));
    for (int t = 0; t < dim_; ++t) p.coords[static_cast<std::size_t>(t)] = coord(node, t);
    return p;
}

NodeSet NodeSet::subset(const std::vector<int>& indices) const {
    std::vector<double> flat;
    flat.reserve(indices.size() * static_cast<std::size_t>(dim_));
    for (int j : indices)
        for (int t = 0; t < dim_; ++t) flat.push_back(coord(j, t));
    return NodeSet(dim_, std::move(flat));
}

double separation_distance(const NodeSet& nodes) {
    if (auto q = nodes.cached_separation()) return *q;
    const int m = nodes.size();
    if (m < 2) throw InvalidArgument("separation_distance: need at least two nodes");
    const auto& flat = nodes.flat();
    const int d = nodes.dim();
    double q = 1.0;
    for (int j = 0; j < m; ++j)
        for (int l = j + 1; l < m; ++l) {
            double v = dist_flat(flat, static_cast<std::size_t>(j) * static_cast<std::size_t>(d),
                                 flat, static_cast<std::size_t>(l) * static_cast<std::size_t>(d), d);
            if (v < q) q = v;
        }
    if (q == 0.0) throw NumericError("separation_distance: duplicate nodes, q = 0");
    nodes.cache_separation(q);
    return q;
}

double mesh_norm(const NodeSet& nodes, int resolution) {
    if (resolution < 2) throw InvalidArgument("mesh_norm: resolution must be >= 2");
    const int d = nodes.dim();
    const int m = nodes.size();
    const auto& flat = nodes.flat();

    std::vector<double> probe(static_cast<std::size_t>(d), 0.0);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    double max_min = 0.0;
    const double h = 1.0 / resolution;
    while (true) {
        for (int t = 0; t < d; ++t)
            probe[static_cast<std::size_t>(t)] = -0.5 + idx[static_cast<std::size_t>(t)] * h;
        double best = 1.0;
        for (int j = 0; j < m; ++j) {
            double v = dist_flat(probe, 0, flat,
                                 static_cast<std::size_t>(j) * static_cast<std::size_t>(d), d);
            if (v < best) best = v;
            if (best == 0.0) break;
        }
        if (best > max_min) max_min = best;

        int axis = d - 1;
        while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == resolution)
            idx[static_cast<std::size_t>(axis--)] = 0;
        if (axis < 0) break;
    }
    return 2.0 * max_min;
}

namespace {

NodeSet generate_equispaced(int dim, int n) {
    if (n < 1) throw InvalidArgument("generate_nodes: equispaced n must be >= 1");
    std::size_t m = 1;
    for (int t = 0; t < dim; ++t) m *= static_cast<std::size_t>(n);
    std::vector<double> flat;
    flat.reserve(m * static_cast<std::size_t>(dim));
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    while (true) {
        for (int t = 0; t < dim; ++t)
            flat.push_back(-0.5 + static_cast<double>(idx[static_cast<std::size_t>(t)]) / n);
        int axis = dim - 1;
        while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == n)
            idx[static_cast<std::size_t>(axis--)] = 0;
        if (axis < 0) break;
    }
    return NodeSet(dim, std::move(flat));
}

NodeSet generate_jittered(int dim, int count, double jitter, std::uint64_t seed) {
    if (dim != 1)
        throw InvalidArgument("generate_nodes: jittered nodes are univariate");
    if (count < 1) throw InvalidArgument("generate_nodes: node count must be >= 1");
    if (jitter < 0.0 || jitter >= 1.0)
        throw InvalidArgument("generate_nodes: jitter must lie in [0, 1)");
    CounterRng rng(seed);
    std::vector<double> flat(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        double eps_j = jitter * rng.next_unit();
        flat[static_cast<std::size_t>(j)] = -0.5 + (j - eps_j) / count;
    }
    return NodeSet(1, std::move(flat));
}

NodeSet generate_separated(int dim, int count, double q, std::uint64_t seed) {
    if (count < 1) throw InvalidArgument("generate_nodes: node count must be >= 1");
    if (q <= 0.0 || q > 0.5)
        throw InvalidArgument("generate_nodes: separation must lie in (0, 1/2]");
    double volume = static_cast<double>(count) * std::pow(q, dim);
    if (volume > 1.0)
        throw NumericError("generate_nodes: M*q^d > 1, q-separated set infeasible");

    CounterRng rng(seed);
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(dim));
    std::vector<double> candidate(static_cast<std::size_t>(dim));
    long long budget = 10000LL * count;
    int accepted = 0;
    while (accepted < count) {
        if (budget-- <= 0)
            throw NumericError("generate_nodes: rejection sampler exhausted retries");
        for (int t = 0; t < dim; ++t)
            candidate[static_cast<std::size_t>(t)] = rng.next_in(-0.5, 0.5);
        bool ok = true;
        for (int j = 0; j < accepted && ok; ++j)
            ok = dist_flat(candidate, 0, flat,
                           static_cast<std::size_t>(j) * static_cast<std::size_t>(dim),
                           dim) >= q;
        if (!ok) continue;
        for (int t = 0; t < dim; ++t) flat.push_back(candidate[static_cast<std::size_t>(t)]);
        ++accepted;
    }
    return NodeSet(dim, std::move(flat));
}

}  // namespace

NodeSet generate_nodes(const NodeGenSpec& spec, std::uint64_t seed) {
    if (spec.dim < 1) throw InvalidArgument("generate_nodes: dimension must be >= 1");
    if (const auto* eq = std::get_if<EquispacedSpec>(&spec.kind))
        return generate_equispaced(spec.dim, eq->n);
    if (const auto* jit = std::get_if<JitteredSpec>(&spec.kind))
        return generate_jittered(spec.dim, jit->count, jit->jitter, seed);
    const auto& sep = std::get<RandomSeparatedSpec>(spec.kind);
    return generate_separated(spec.dim, sep.count, sep.separation, seed);
}

std::vector<int> ring_histogram(const NodeSet& nodes, double q, int centre) {
    if (q <= 0.0 || q > 0.5)
        throw InvalidArgument("ring_histogram: q must lie in (0, 1/2]");
    if (centre < 0 || centre >= nodes.size())
        throw InvalidArgument("ring_histogram: centre index out of range");
    const int rings = static_cast<int>(std::floor(1.0 / (2.0 * q))) + 1;
    std::vector<int> counts(static_cast<std::size_t>(rings), 0);
    const TorusPoint c = nodes.point(centre);
    for (int j = 0; j < nodes.size(); ++j) {
        double dist = torus_dist(nodes.point(j), c);
        int m = static_cast<int>(std::floor(dist / q));
        if (m >= rings) m = rings - 1;  // last ring is closed at 1/2
        ++counts[static_cast<std::size_t>(m)];
    }
    return counts;
}

double ring_cardinality_bound(int dim, int m) {
    if (m < 1) throw InvalidArgument("ring_cardinality_bound: m must be >= 1");
    double two_d = std::pow(2.0, dim);
    return two_d * (two_d - 1.0) * std::pow(static_cast<double>(m), dim - 1);
}

NodeSet load_nodes(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("load_nodes: cannot open '" + path + "'");
    std::vector<double> flat;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;  // blank line
        if (first[0] == '#') continue;
        fields.clear();
        fields.str(line);
        double v;
        int got = 0;
        while (fields >> v) {
            flat.push_back(v);
            ++got;
        }
        if (got != dim)
            throw InvalidArgument("load_nodes: line " + std::to_string(lineno) + " of '" +
                                  path + "' has " + std::to_string(got) +
                                  " fields, expected " + std::to_string(dim));
    }
    if (flat.empty()) throw InvalidArgument("load_nodes: '" + path + "' contains no nodes");
    return NodeSet(dim, std::move(flat));
}

void save_nodes(const NodeSet& nodes, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw NumericError("save_nodes: cannot open '" + path + "' for writing");
    out.precision(17);
    for (int j = 0; j < nodes.size(); ++j) {
        for (int t = 0; t < nodes.dim(); ++t) {
            if (t) out << ' ';
            out << nodes.coord(j, t);
        }
        out << '\n';
    }
    if (!out) throw NumericError("save_nodes: write to '" + path + "' failed");
}

}  // namespace torinterp
