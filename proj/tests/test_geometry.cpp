#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "torinterp/geometry.hpp"
#include "torinterp/rng.hpp"

using namespace torinterp;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("torus_dist handles wrap-around and matches the shift enumeration") {
    CHECK(torus_dist({{0.45}}, {{-0.45}}) == doctest::Approx(0.10).epsilon(1e-14));
    CHECK(torus_dist({{0.3, -0.2}}, {{0.3, -0.2}}) == 0.0);
    // Derived by enumerating shifts in {-1,0,1}^2.
    const TorusPoint a{{0.4, 0.0}}, b{{-0.4, 0.1}};
    CHECK(torus_dist(a, b) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(torus_dist(a, b) ==
          doctest::Approx(oracles::dist_by_shift_enumeration(a, b)).epsilon(1e-14));
    CHECK_THROWS_AS(torus_dist({{0.1}}, {{0.1, 0.2}}), InvalidArgument);
}

TEST_CASE("torus_dist is a metric on random triples") {
    CounterRng rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 3);
        auto draw = [&] {
            TorusPoint p;
            for (int t = 0; t < d; ++t) p.coords.push_back(rng.next_in(-0.5, 0.5));
            return p;
        };
        const TorusPoint x = draw(), y = draw(), z = draw();
        const double xy = torus_dist(x, y), yx = torus_dist(y, x);
        CHECK(xy == yx);
        CHECK(xy >= 0.0);
        CHECK(xy <= 0.5);
        CHECK(torus_dist(x, z) <= xy + torus_dist(y, z) + 1e-14);
        CHECK(xy == doctest::Approx(oracles::dist_by_shift_enumeration(x, y)).epsilon(1e-14));
    }
}

TEST_CASE("separation distance of simple sets and brute-force agreement") {
    NodeGenSpec eq{1, EquispacedSpec{4}};
    CHECK(separation_distance(generate_nodes(eq, 0)) == doctest::Approx(0.25).epsilon(1e-14));

    const NodeSet pair(1, {0.0, 0.4});
    CHECK(separation_distance(pair) == doctest::Approx(0.4).epsilon(1e-14));

    const NodeSet random = oracles::random_nodes(50, 2, 11);
    const double q = separation_distance(random);
    CHECK(q == doctest::Approx(oracles::brute_force_separation(random)).epsilon(1e-14));
    CHECK(*random.cached_separation() == q);

    CHECK_THROWS_AS(separation_distance(NodeSet(1, {0.25})), InvalidArgument);
    CHECK_THROWS_AS(NodeSet(1, {0.1, 0.1}), InvalidArgument);
    // Canonicalisation makes 0.75 and -0.25 the same node.
    CHECK_THROWS_AS(NodeSet(1, {0.75, -0.25}), InvalidArgument);
}

TEST_CASE("mesh norm approximations") {
    NodeGenSpec eq{1, EquispacedSpec{8}};
    CHECK(std::abs(mesh_norm(generate_nodes(eq, 0), 1024) - 1.0 / 8) <= 1.0 / 1024);

    const NodeSet single(1, {0.0});
    CHECK(mesh_norm(single, 1024) == doctest::Approx(1.0).epsilon(1e-3));

    const NodeSet cluster(1, {0.0, 0.01});
    CHECK(std::abs(mesh_norm(cluster, 4096) - 0.99) <= 2.0 / 4096);

    CHECK_THROWS_AS(mesh_norm(single, 1), InvalidArgument);
}

TEST_CASE("node generation: equispaced, jittered, q-separated") {
    const NodeSet eq = generate_nodes({1, EquispacedSpec{4}}, 0);
    REQUIRE(eq.size() == 4);
    CHECK(eq.coord(0, 0) == -0.5);
    CHECK(eq.coord(1, 0) == -0.25);
    CHECK(eq.coord(2, 0) == 0.0);
    CHECK(eq.coord(3, 0) == 0.25);

    // Zero jitter degenerates to the shifted equispaced grid.
    const NodeSet jit0 = generate_nodes({1, JitteredSpec{10, 0.0}}, 5);
    const NodeSet eq10 = generate_nodes({1, EquispacedSpec{10}}, 0);
    for (int j = 0; j < 10; ++j) CHECK(jit0.coord(j, 0) == eq10.coord(j, 0));

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const NodeSet jit = generate_nodes({1, JitteredSpec{25, 0.3}}, seed);
        CHECK(separation_distance(jit) >= (1.0 - 0.3) / 25 - 1e-15);

        const NodeSet sep = generate_nodes({1, RandomSeparatedSpec{20, 0.01}}, seed);
        CHECK(separation_distance(sep) >= 0.01);
    }

    SUBCASE("reproducibility is byte-level") {
        const NodeSet a = generate_nodes({2, RandomSeparatedSpec{30, 0.02}}, 42);
        const NodeSet b = generate_nodes({2, RandomSeparatedSpec{30, 0.02}}, 42);
        REQUIRE(a.flat().size() == b.flat().size());
        CHECK(std::memcmp(a.flat().data(), b.flat().data(),
                          a.flat().size() * sizeof(double)) == 0);
    }

    SUBCASE("infeasible separation is rejected") {
        CHECK_THROWS_AS(generate_nodes({1, RandomSeparatedSpec{100, 0.02}}, 1),
                        NumericError);
    }
}

TEST_CASE("ring histogram counts and the packing bound") {
    const NodeSet single(1, {0.2});
    const auto counts = ring_histogram(single, 0.2, 0);
    REQUIRE(counts.size() == 3);  // m = 0, 1, floor(1/(2q)) = 2
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 0);
    CHECK(counts[2] == 0);

    CHECK(ring_cardinality_bound(2, 1) == doctest::Approx(12.0));

    for (std::uint64_t seed : {4ULL, 9ULL}) {
        for (int d : {1, 2}) {
            const double q = d == 1 ? 0.02 : 0.08;
            const NodeSet nodes = generate_nodes({d, RandomSeparatedSpec{30, q}}, seed);
            const double q_real = separation_distance(nodes);
            for (int centre = 0; centre < nodes.size(); centre += 7) {
                const auto rings = ring_histogram(nodes, q_real, centre);
                int total = 0;
                for (std::size_t m = 0; m < rings.size(); ++m) {
                    total += rings[m];
                    if (m >= 1)
                        CHECK(rings[m] <=
                              ring_cardinality_bound(d, static_cast<int>(m)));
                }
                CHECK(total == nodes.size());
            }
        }
    }

    CHECK_THROWS_AS(ring_histogram(single, 0.0, 0), InvalidArgument);
    CHECK_THROWS_AS(ring_histogram(single, 0.7, 0), InvalidArgument);
    CHECK_THROWS_AS(ring_histogram(single, 0.2, 5), InvalidArgument);
}

TEST_CASE("q <= M^(-1/d) <= mesh norm for generated sets") {
    for (std::uint64_t seed : {1ULL, 6ULL}) {
        const NodeSet nodes = generate_nodes({2, RandomSeparatedSpec{25, 0.05}}, seed);
        const double q = separation_distance(nodes);
        const double middle = std::pow(25.0, -0.5);
        const int resolution = 128;
        const double delta = mesh_norm(nodes, resolution);
        CHECK(q <= middle + 1e-14);
        CHECK(middle <= delta + 2.0 / resolution);
    }
}

TEST_CASE("node files round-trip and canonicalise on load") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "torinterp_geometry_test";
    fs::create_directories(dir);

    const NodeSet nodes = oracles::random_nodes(17, 2, 23);
    const std::string path = (dir / "nodes.txt").string();
    save_nodes(nodes, path);
    const NodeSet loaded = load_nodes(path, 2);
    REQUIRE(loaded.size() == nodes.size());
    CHECK(std::memcmp(loaded.flat().data(), nodes.flat().data(),
                      nodes.flat().size() * sizeof(double)) == 0);

    const std::string raw = (dir / "raw.txt").string();
    {
        std::ofstream out(raw);
        out << "# comment line\n0.75 0.1\n\n1.5 -0.6\n";
    }
    const NodeSet canon = load_nodes(raw, 2);
    REQUIRE(canon.size() == 2);
    CHECK(canon.coord(0, 0) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(canon.coord(1, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(canon.coord(1, 1) == doctest::Approx(0.4).epsilon(1e-12));

    CHECK_THROWS_AS(load_nodes(raw, 3), InvalidArgument);
    CHECK_THROWS_AS(load_nodes((dir / "missing.txt").string(), 2), InvalidArgument);
    fs::remove_all(dir);
}

TEST_SUITE_END();
