#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracles.hpp"
#include "torinterp/weights.hpp"

using namespace torinterp;

namespace {

double quadrature(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15,
                                                                         1e-12);
}

// Analytic zeta values, independent of the library's series evaluation.
double zeta_exact(int beta) {
    switch (beta) {
        case 2: return std::numbers::pi * std::numbers::pi / 6.0;
        case 3: return 1.2020569031595942854;  // Apery's constant
        case 4: return std::pow(std::numbers::pi, 4) / 90.0;
        default: throw std::logic_error("zeta_exact: unsupported order");
    }
}

}  // namespace

TEST_SUITE_BEGIN("weights");

TEST_CASE("cardinal B-splines: knot values, recursion integral, partition of unity") {
    CHECK(cardinal_bspline(2, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cardinal_bspline(2, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cardinal_bspline(1, 0.5) == 1.0);
    CHECK(cardinal_bspline(1, -0.1) == 0.0);

    // N_4(2) via the defining integral of N_3 over [1, 2].
    const double integral = quadrature([](double t) { return cardinal_bspline(3, t); },
                                       1.0, 2.0);
    CHECK(integral == doctest::Approx(2.0 / 3).epsilon(1e-10));
    CHECK(cardinal_bspline(4, 2.0) == doctest::Approx(2.0 / 3).epsilon(1e-13));

    // Recursion integral at random points for a few orders.
    CounterRng rng(3);
    for (int beta = 2; beta <= 5; ++beta)
        for (int rep = 0; rep < 4; ++rep) {
            const double z = rng.next_in(0.0, beta);
            const double by_integral = quadrature(
                [&](double t) { return cardinal_bspline(beta - 1, t); },
                std::max(z - 1.0, 0.0), std::min(z, static_cast<double>(beta - 1)));
            CHECK(cardinal_bspline(beta, z) == doctest::Approx(by_integral).epsilon(1e-9));
        }

    for (int beta : {2, 3, 4, 6}) {
        for (int rep = 0; rep < 8; ++rep) {
            const double z = rng.next_in(0.0, beta);
            double sum = 0.0;
            for (int j = -beta; j <= beta; ++j) sum += cardinal_bspline(beta, z - j);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        }
        CHECK(cardinal_bspline(beta, -0.5) == 0.0);
        CHECK(cardinal_bspline(beta, beta + 0.5) == 0.0);
    }
}

TEST_CASE("weight functions: values, support, L1 normalisation") {
    CHECK(weight_eval(WeightFunctionSpec::hat(), 0.0) == 2.0);
    for (const auto& spec :
         {WeightFunctionSpec::top_hat(), WeightFunctionSpec::hat(),
          WeightFunctionSpec::bspline(3), WeightFunctionSpec::bspline(4),
          WeightFunctionSpec::sobolev(0.5, 3, 1e-3)}) {
        CHECK(weight_eval(spec, 0.5) == 0.0);
        CHECK(weight_eval(spec, -0.5) == 0.0);
        CHECK(weight_eval(spec, 0.7) == 0.0);
        CounterRng rng(5);
        for (int rep = 0; rep < 20; ++rep)
            CHECK(weight_eval(spec, rng.next_in(-0.5, 0.5)) >= 0.0);
    }

    for (const auto& spec : {WeightFunctionSpec::bspline(3),
                             WeightFunctionSpec::sobolev(0.5, 3, 1e-3),
                             WeightFunctionSpec::sobolev(1.0, 2, 1e-2)}) {
        const double mass = quadrature([&](double z) { return weight_eval(spec, z); },
                                       -0.5, 0.5);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }

    // The order-2 B-spline weight is the hat function.
    CounterRng rng(8);
    for (int rep = 0; rep < 30; ++rep) {
        const double z = rng.next_in(-0.6, 0.6);
        CHECK(weight_eval(WeightFunctionSpec::bspline(2), z) ==
              doctest::Approx(weight_eval(WeightFunctionSpec::hat(), z)).epsilon(1e-13));
    }
}

TEST_CASE("sample norm values and the Lemma lower bound") {
    CHECK(sample_norm(WeightFunctionSpec::top_hat(), 8) == doctest::Approx(7.0));
    CHECK(sample_norm(WeightFunctionSpec::hat(), 4) == doctest::Approx(4.0).epsilon(1e-14));

    for (int degree = 4; degree <= 64; degree += 2)
        CHECK(sample_norm(WeightFunctionSpec::bspline(2), degree) ==
              doctest::Approx(static_cast<double>(degree)).epsilon(1e-12));

    for (int beta : {2, 3, 4}) {
        const double variation = variation_bound(WeightFunctionSpec::bspline(beta)).value;
        for (int degree = 2 * beta; degree <= 64; degree += 2) {
            const double lower =
                degree * (1.0 - 2.0 * zeta_exact(beta) *
                                    std::pow(4.0 * std::numbers::pi * beta, -beta) *
                                    variation);
            CHECK(sample_norm(WeightFunctionSpec::bspline(beta), degree) >= lower);
        }
    }
}

TEST_CASE("damping factors from weight functions") {
    const DampingFactors hat4 = damping_from_weight(WeightFunctionSpec::hat(), 4);
    CHECK(hat4.axis_factors()[0] == doctest::Approx(1.0 / 8).epsilon(1e-14));
    CHECK(hat4.axis_factors()[1] == doctest::Approx(3.0 / 8).epsilon(1e-14));
    CHECK(hat4.axis_factors()[2] == doctest::Approx(3.0 / 8).epsilon(1e-14));
    CHECK(hat4.axis_factors()[3] == doctest::Approx(1.0 / 8).epsilon(1e-14));

    for (const auto& spec : {WeightFunctionSpec::hat(), WeightFunctionSpec::bspline(3),
                             WeightFunctionSpec::sobolev(0.5, 3, 1e-3)}) {
        for (int degree : {8, 16, 32}) {
            const DampingFactors w = damping_from_weight(spec, degree);
            CHECK(w.axis_factors().sum() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(w.axis_factors().minCoeff() > 0.0);
        }
    }

    // The hat construction reproduces the closed Fejer factors.
    for (int degree : {4, 8, 16, 32}) {
        const DampingFactors from_weight = damping_from_weight(WeightFunctionSpec::hat(), degree);
        const DampingFactors closed = damping_closed(ClosedKernelSpec::fejer(), degree);
        for (int i = 0; i < degree; ++i)
            CHECK(from_weight.axis_factors()[i] ==
                  doctest::Approx(closed.axis_factors()[i]).epsilon(1e-12));
    }
}

TEST_CASE("closed coefficient families") {
    const DampingFactors dirichlet = damping_closed(ClosedKernelSpec::dirichlet(), 6);
    for (int i = 0; i < 6; ++i)
        CHECK(dirichlet.axis_factors()[i] == doctest::Approx(1.0 / 6).epsilon(1e-15));

    const DampingFactors fejer = damping_closed(ClosedKernelSpec::fejer(), 4);
    CHECK(fejer.axis_factors()[0] == doctest::Approx(1.0 / 8).epsilon(1e-15));
    CHECK(fejer.axis_factors()[1] == doctest::Approx(3.0 / 8).epsilon(1e-15));

    // One convolution factor: the Jackson kernel of order 2 is the Fejer
    // kernel of degree 2 sigma.
    for (int sigma : {2, 3, 5}) {
        const int degree = ClosedKernelSpec::jackson_degree(2, sigma);
        const DampingFactors jackson =
            damping_closed(ClosedKernelSpec::jackson(2, sigma), degree);
        const DampingFactors fejer2s = damping_closed(ClosedKernelSpec::fejer(), degree);
        for (int i = 0; i < degree; ++i)
            CHECK(jackson.axis_factors()[i] ==
                  doctest::Approx(fejer2s.axis_factors()[i]).epsilon(1e-13));
    }

    // beta = 4, sigma = 2: pair-averaged binomial core (1,4,6,4,1) / 32.
    const DampingFactors j42 = damping_closed(ClosedKernelSpec::jackson(4, 2), 6);
    const double expected[6] = {1 / 32.0, 5 / 32.0, 10 / 32.0,
                                10 / 32.0, 5 / 32.0, 1 / 32.0};
    for (int i = 0; i < 6; ++i)
        CHECK(j42.axis_factors()[i] == doctest::Approx(expected[i]).epsilon(1e-14));

    CHECK_THROWS_AS(damping_closed(ClosedKernelSpec::jackson(4, 2), 8), InvalidArgument);
    CHECK_THROWS_AS(ClosedKernelSpec::jackson(3, 2), InvalidArgument);
}

TEST_CASE("tensorisation preserves normalisation and products") {
    const DampingFactors fejer = damping_closed(ClosedKernelSpec::fejer(), 4);
    const DampingFactors same = tensorize(fejer, 1);
    CHECK(same.dim() == 1);
    CHECK((same.axis_factors() - fejer.axis_factors()).norm() == 0.0);

    const DampingFactors grid2 = tensorize(fejer, 2);
    CHECK(grid2.dim() == 2);
    CHECK(grid2.diagonal().sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(grid2.value({0, 0}) == doctest::Approx(9.0 / 64).epsilon(1e-14));
    CHECK(grid2.value({-2, 1}) == doctest::Approx(1.0 / 64).epsilon(1e-14));

    // diagonal() agrees with value() in grid order.
    const FrequencyGrid grid = grid2.grid();
    const Eigen::VectorXd diag = grid2.diagonal();
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(diag[static_cast<Eigen::Index>(i)] ==
              doctest::Approx(grid2.value(grid.multi_index(i))).epsilon(1e-15));
}

TEST_CASE("variation bounds") {
    const VariationBound b2 = variation_bound(WeightFunctionSpec::bspline(2));
    CHECK(b2.exact);
    CHECK(b2.value == doctest::Approx(16.0));
    CHECK(variation_bound(WeightFunctionSpec::bspline(4)).value ==
          doctest::Approx(4096.0));
    CHECK(variation_bound(WeightFunctionSpec::hat()).value == doctest::Approx(16.0));

    CHECK_THROWS_AS(variation_bound(WeightFunctionSpec::top_hat()), InvalidArgument);

    // The estimate dominates the sampled-difference sum at each resolution
    // it probed.
    const WeightFunctionSpec sobolev = WeightFunctionSpec::sobolev(1.0, 2, 1e-2);
    const VariationBound estimate = variation_bound(sobolev);
    CHECK_FALSE(estimate.exact);
    for (int resolution : {4096, 8192, 16384}) {
        const double h = 1.0 / resolution;
        std::vector<double> v(static_cast<std::size_t>(resolution) + 1);
        for (int i = 0; i <= resolution; ++i)
            v[static_cast<std::size_t>(i)] = weight_eval(sobolev, -0.5 + i * h);
        for (int pass = 0; pass < sobolev.beta() - 1; ++pass) {
            for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = (v[i + 1] - v[i]) / h;
            v.pop_back();
        }
        double tv = 0.0;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) tv += std::abs(v[i + 1] - v[i]);
        CHECK(estimate.value >= tv);
    }
}

TEST_SUITE_END();
