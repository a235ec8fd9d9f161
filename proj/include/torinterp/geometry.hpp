#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torinterp/types.hpp"

namespace torinterp {

/// A point on the torus T^d = [-1/2, 1/2)^d.
struct TorusPoint {
    std::vector<double> coords;

    int dim() const { return static_cast<int>(coords.size()); }
};

/// Reduce a raw coordinate into the fundamental domain [-1/2, 1/2).
double canonical_coord(double x);

/// Canonicalise every coordinate of a point.
TorusPoint canonical(TorusPoint p);

/// Wrap-around distance dist(x, y) = min_{j in Z^d} ||(x - y) + j||_inf,
/// with values in [0, 1/2].
double torus_dist(const TorusPoint& x, const TorusPoint& y);

/// An ordered set of M pairwise distinct sampling nodes on T^d.
///
/// Construction canonicalises all coordinates and rejects exact duplicates;
/// the separation distance is cached after its first computation.
class NodeSet {
public:
    NodeSet(int dim, std::vector<double> flat_coords);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(coords_.size()) / dim_; }

    double coord(int node, int axis) const {
        return coords_[static_cast<std::size_t>(node) * static_cast<std::size_t>(dim_) +
                       static_cast<std::size_t>(axis)];
    }
    TorusPoint point(int node) const;

    const std::vector<double>& flat() const { return coords_; }

    /// Cached separation distance; empty until separation_distance() ran.
    std::optional<double> cached_separation() const { return sep_; }
    void cache_separation(double q) const { sep_ = q; }

    /// Subset restricted to the given node indices (order preserved).
    NodeSet subset(const std::vector<int>& indices) const;

private:
    int dim_;
    std::vector<double> coords_;  // row-major, M x d
    mutable std::optional<double> sep_;
};

/// Minimum pairwise torus distance q over all distinct node pairs.
/// Requires M >= 2. The result is cached on the node set.
double separation_distance(const NodeSet& nodes);

/// Mesh norm delta = 2 max_x min_j dist(x_j, x), approximated by maximising
/// over a regular grid with `resolution` points per axis. The returned value
/// underestimates delta by at most d/resolution.
double mesh_norm(const NodeSet& nodes, int resolution);

struct EquispacedSpec {
    int n = 2;  // nodes per axis; M = n^d
};
struct JitteredSpec {
    int count = 2;      // M (d = 1 only)
    double jitter = 0;  // epsilon in [0, 1)
};
struct RandomSeparatedSpec {
    int count = 2;
    double separation = 0.01;
};

/// Node generator selection: equispaced grid, jittered equispaced (d = 1),
/// or rejection-sampled q-separated nodes.
struct NodeGenSpec {
    int dim = 1;
    std::variant<EquispacedSpec, JitteredSpec, RandomSeparatedSpec> kind;
};

/// Deterministic node generation: identical (spec, seed) pairs yield
/// byte-identical node sets.
NodeSet generate_nodes(const NodeGenSpec& spec, std::uint64_t seed);

/// Counts |R_{X,q,m}| of nodes in the rings m*q <= dist < (m+1)*q around the
/// chosen centre node, m = 0, ..., floor(q^{-1}/2); the last ring is closed
/// at 1/2. The counts sum to M.
std::vector<int> ring_histogram(const NodeSet& nodes, double q, int centre);

/// Bound of the ring cardinality for q-separated sets:
/// 2^d (2^d - 1) m^(d-1) for m >= 1.
double ring_cardinality_bound(int dim, int m);

/// One node per line, d whitespace-separated decimal coordinates.
/// Coordinates outside [-1/2, 1/2) are canonicalised on load.
NodeSet load_nodes(const std::string& path, int dim);
void save_nodes(const NodeSet& nodes, const std::string& path);

}  // namespace torinterp
