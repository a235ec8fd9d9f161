#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "torinterp/kernels.hpp"
#include "torinterp/stability.hpp"

using namespace torinterp;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("zeta against analytic values and a brute-force sum") {
    CHECK(zeta(2.0) ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-12));
    CHECK(zeta(4.0) == doctest::Approx(std::pow(std::numbers::pi, 4) / 90.0).epsilon(1e-12));

    double brute = 0.0;
    for (int r = 10'000'000; r >= 1; --r) brute += std::pow(static_cast<double>(r), -3.0);
    CHECK(zeta(3.0) == doctest::Approx(brute).epsilon(1e-10));

    CHECK_THROWS_AS(zeta(1.0), InvalidArgument);
    CHECK_THROWS_AS(zeta(0.5), InvalidArgument);
}

TEST_CASE("kernel evaluation: normalisation, bound, tensor structure") {
    const DampingFactors fejer16 = damping_closed(ClosedKernelSpec::fejer(), 16);
    CHECK(std::abs(kernel_eval(fejer16, {{0.0}}) - 1.0) <= 1e-12);

    CounterRng rng(2);
    for (int rep = 0; rep < 50; ++rep) {
        const double x = rng.next_in(-0.5, 0.5);
        CHECK(std::abs(kernel_eval(fejer16, {{x}})) <= 1.0 + 1e-12);
    }

    // Dirichlet N=4 at x = 1/4: the four-term sum cancels exactly.
    const DampingFactors dirichlet4 = damping_closed(ClosedKernelSpec::dirichlet(), 4);
    CHECK(std::abs(kernel_eval(dirichlet4, {{0.25}})) <= 1e-14);

    // Tensor kernels factor into univariate evaluations.
    const DampingFactors tensor = tensorize(fejer16, 2);
    for (int rep = 0; rep < 20; ++rep) {
        const double a = rng.next_in(-0.5, 0.5), b = rng.next_in(-0.5, 0.5);
        const Complex product = kernel_eval(fejer16, {{a}}) * kernel_eval(fejer16, {{b}});
        CHECK(std::abs(kernel_eval(tensor, {{a, b}}) - product) <= 1e-13);
    }

    // General (non-tensor) weights agree with the explicit double sum.
    const FrequencyGrid grid(2, 4);
    const DampingFactors general = oracles::random_weights(grid, 77);
    for (int rep = 0; rep < 10; ++rep) {
        const TorusPoint x{{rng.next_in(-0.5, 0.5), rng.next_in(-0.5, 0.5)}};
        Complex direct = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto k = grid.multi_index(i);
            direct += general.value(k) *
                      std::polar(1.0, 2.0 * std::numbers::pi *
                                          (k[0] * x.coords[0] + k[1] * x.coords[1]));
        }
        CHECK(std::abs(kernel_eval(general, x) - direct) <= 1e-12);
    }
}

TEST_CASE("closed forms agree with coefficient sums") {
    CHECK(std::abs(kernel_closed_form(ClosedKernelSpec::fejer(), 16, 0.0) - 1.0) <= 1e-14);

    const DampingFactors fejer16 = damping_closed(ClosedKernelSpec::fejer(), 16);
    CHECK(std::abs(kernel_closed_form(ClosedKernelSpec::fejer(), 16, 0.3) -
                   kernel_eval(fejer16, {{0.3}})) <= 1e-12);

    CounterRng rng(4);
    const DampingFactors dirichlet12 = damping_closed(ClosedKernelSpec::dirichlet(), 12);
    const DampingFactors jackson = damping_closed(ClosedKernelSpec::jackson(4, 4), 14);
    for (int rep = 0; rep < 100; ++rep) {
        const double x = rng.next_in(-0.5, 0.5);
        CHECK(std::abs(kernel_closed_form(ClosedKernelSpec::dirichlet(), 12, x) -
                       kernel_eval(dirichlet12, {{x}})) <= 1e-10);
        CHECK(std::abs(kernel_closed_form(ClosedKernelSpec::fejer(), 16, x) -
                       kernel_eval(fejer16, {{x}})) <= 1e-10);
        CHECK(std::abs(kernel_closed_form(ClosedKernelSpec::jackson(4, 4), 14, x) -
                       kernel_eval(jackson, {{x}})) <= 1e-10);
    }

    // Removable singularity: tiny arguments use the series branch.
    for (double x : {0.0, 1e-12, -3e-10, 2e-9}) {
        CHECK(std::abs(kernel_closed_form(ClosedKernelSpec::dirichlet(), 64, x) -
                       kernel_eval(damping_closed(ClosedKernelSpec::dirichlet(), 64), {{x}}))
              <= 1e-10);
    }

    // Fejer localisation |B_{2,N}(x)| <= |N x|^-2 on a dense grid.
    for (int degree : {8, 16, 64}) {
        for (int i = 1; i <= 1000; ++i) {
            const double x = 0.5 * i / 1000.0;
            const double bound = 1.0 / std::pow(degree * x, 2);
            CHECK(std::abs(kernel_closed_form(ClosedKernelSpec::fejer(), degree, x)) <=
                  bound * (1.0 + 1e-12));
        }
    }

    CHECK_THROWS_AS(kernel_closed_form(ClosedKernelSpec::fejer(), 16, 0.7),
                    InvalidArgument);
    CHECK_THROWS_AS(kernel_closed_form(ClosedKernelSpec::jackson(4, 3), 16, 0.1),
                    InvalidArgument);
}

TEST_CASE("decay certificates: constants and empirical validity") {
    const KernelDecay spline2 = decay_profile(WeightFunctionSpec::bspline(2));
    CHECK(spline2.beta == 2.0);
    CHECK(spline2.c_beta == doctest::Approx(12.0 / 11.0).epsilon(1e-12));
    CHECK(spline2.valid_from_degree == 4);

    CHECK(decay_profile(ClosedKernelSpec::jackson(4, 2)).c_beta == doctest::Approx(16.0));
    CHECK(decay_profile(ClosedKernelSpec::dirichlet()).beta == 1.0);
    CHECK(decay_profile(ClosedKernelSpec::dirichlet()).c_beta == 1.0);
    CHECK(decay_profile(ClosedKernelSpec::fejer()).c_beta == 1.0);

    const KernelDecay sobolev = decay_profile(WeightFunctionSpec::sobolev(0.5, 3, 1e-3), 64);
    CHECK(sobolev.empirical);
    CHECK_FALSE(spline2.empirical);

    // Certificates hold on a dense grid for the kernels they describe.
    struct Case {
        KernelDecay decay;
        DampingFactors weights;
    };
    std::vector<Case> cases;
    for (int degree : {16, 32, 64}) {
        for (int beta : {2, 3, 4})
            cases.push_back({decay_profile(WeightFunctionSpec::bspline(beta)),
                             damping_from_weight(WeightFunctionSpec::bspline(beta), degree)});
        cases.push_back({decay_profile(ClosedKernelSpec::fejer()),
                         damping_closed(ClosedKernelSpec::fejer(), degree)});
        cases.push_back({decay_profile(ClosedKernelSpec::dirichlet()),
                         damping_closed(ClosedKernelSpec::dirichlet(), degree)});
    }
    for (const auto& c : cases) {
        const int degree = c.weights.degree();
        if (degree < c.decay.valid_from_degree) continue;
        for (int i = 1; i <= 512; ++i) {
            const double x = 0.5 * i / 512.0;
            const double lhs = std::abs(kernel_eval(c.weights, {{x}})) *
                               std::pow(degree * x, c.decay.beta);
            CHECK(lhs <= c.decay.c_beta * (1.0 + 1e-9));
        }
    }

    // Tensor product decay in two dimensions.
    const DampingFactors spline3_2d =
        tensorize(damping_from_weight(WeightFunctionSpec::bspline(3), 16), 2);
    const KernelDecay decay3 = decay_profile(WeightFunctionSpec::bspline(3));
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            if (i == 0 && j == 0) continue;
            const double x = 0.5 * i / 24.0, y = 0.5 * j / 24.0;
            const double norm = std::max(x, y);
            CHECK(std::abs(kernel_eval(spline3_2d, {{x, y}})) <=
                  decay3.c_beta / std::pow(16.0 * norm, decay3.beta) * (1.0 + 1e-9));
        }
}

TEST_CASE("kernel matrix: structure, factorisation oracle, semidefiniteness") {
    const NodeSet one(1, {0.3});
    const DampingFactors fejer8 = damping_closed(ClosedKernelSpec::fejer(), 8);
    const KernelMatrix single = kernel_matrix(one, fejer8);
    REQUIRE(single.size() == 1);
    CHECK(std::abs(single.entries(0, 0) - 1.0) <= 1e-12);

    // Equispaced M = n = N with Dirichlet weights gives the identity.
    const NodeSet grid8 = generate_nodes({1, EquispacedSpec{8}}, 0);
    const KernelMatrix identity =
        kernel_matrix(grid8, damping_closed(ClosedKernelSpec::dirichlet(), 8));
    for (int j = 0; j < 8; ++j)
        for (int l = 0; l < 8; ++l)
            CHECK(std::abs(identity.entries(j, l) - (j == l ? 1.0 : 0.0)) <= 1e-12);

    // Random node set against the explicit A W A^H triple product and the
    // transform-based factorisation hook.
    const NodeSet nodes = oracles::random_nodes(8, 1, 31);
    const FrequencyGrid grid(1, 16);
    const DampingFactors w = damping_closed(ClosedKernelSpec::fejer(), 16);
    const KernelMatrix direct = kernel_matrix(nodes, w);
    const Eigen::MatrixXcd a = oracles::fourier_matrix(nodes, grid);
    const Eigen::MatrixXcd triple =
        a * w.diagonal().cast<Complex>().asDiagonal() * a.adjoint();
    CHECK((direct.entries - triple).cwiseAbs().maxCoeff() <= 1e-10);
    const KernelMatrix factorized = kernel_matrix_factorized(nodes, w);
    CHECK((direct.entries - factorized.entries).cwiseAbs().maxCoeff() <= 1e-10);

    // Hermitian, unit diagonal, positive semidefinite.
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const NodeSet pts = oracles::random_nodes(12, 2, seed);
        const DampingFactors tensor =
            tensorize(damping_from_weight(WeightFunctionSpec::bspline(3), 8), 2);
        const KernelMatrix k = kernel_matrix(pts, tensor);
        CHECK((k.entries - k.entries.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
        for (int j = 0; j < k.size(); ++j)
            CHECK(std::abs(k.entries(j, j) - 1.0) <= 1e-12);
        CHECK(dense_spectrum(k).front() >= -1e-10);
    }

    // Closed-form assembly matches the coefficient path.
    const KernelMatrix closed =
        kernel_matrix_closed(ClosedKernelSpec::fejer(), 16, nodes);
    CHECK((closed.entries - direct.entries).cwiseAbs().maxCoeff() <= 1e-10);

    CHECK_THROWS_AS(kernel_matrix(nodes, w, 4), InvalidArgument);
}

TEST_SUITE_END();
