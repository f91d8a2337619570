#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "graphene_ndr/quadrature.hpp"

using namespace graphene_ndr;

TEST_CASE("Gauss-Kronrod is exact for low-order polynomials") {
    const std::vector<double> edges{0.0, 2.0};
    const auto r = integrate_panels([](double x) { return std::pow(x, 5) - 3 * x * x + 1; }, edges, {});
    CHECK(r.value == doctest::Approx(64.0 / 6.0 - 8.0 + 2.0).epsilon(1e-14));
    CHECK(r.converged);
    CHECK(r.subdivisions == 0);
    CHECK(r.evaluations == 15);
}

TEST_CASE("endpoint singularity converges to tolerance") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    const std::vector<double> edges{0.0, 1.0};
    const auto r = integrate_panels([](double x) { return std::sqrt(x); }, edges, spec);
    REQUIRE(r.converged);
    CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-10);
    CHECK(r.error <= spec.rel_tol * std::abs(r.value));
}

TEST_CASE("endpoints and breakpoints are never sampled") {
    const std::vector<double> edges{-1.0, 0.0, 1.0};
    auto f = [](double x) {
        if (x == -1.0 || x == 0.0 || x == 1.0) throw std::logic_error("endpoint evaluated");
        return 1.0 / std::sqrt(std::abs(x));
    };
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    const auto r = integrate_panels(f, edges, spec);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("breakpoint at a jump gives the exact answer immediately") {
    auto step = [](double x) { return x < 0.3 ? 1.0 : 0.0; };
    const std::vector<double> split{0.0, 0.3, 1.0};
    const auto with = integrate_panels(step, split, {});
    CHECK(with.value == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(with.subdivisions == 0);

    QuadratureSpec spec;
    spec.max_subdivisions = 5000;
    const std::vector<double> whole{0.0, 1.0};
    const auto without = integrate_panels(step, whole, spec);
    CHECK(without.converged);
    CHECK(without.subdivisions > 10);
    CHECK(std::abs(without.value - 0.3) <= 1e-6 * 0.3 + 1e-15);
}

TEST_CASE("budget exhaustion returns a flagged best estimate") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-14;
    spec.max_subdivisions = 16;
    const std::vector<double> edges{0.0, 1.0};
    const auto r = integrate_panels([](double x) { return std::sin(400.0 * x); }, edges, spec);
    CHECK_FALSE(r.converged);
    CHECK(r.subdivisions == 16);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("empty and degenerate panels") {
    const std::vector<double> none{1.0};
    CHECK(integrate_panels([](double) { return 1.0; }, none, {}).value == 0.0);
    const std::vector<double> repeated{0.0, 0.5, 0.5, 1.0};
    CHECK(integrate_panels([](double) { return 2.0; }, repeated, {}).value == doctest::Approx(2.0));
}
