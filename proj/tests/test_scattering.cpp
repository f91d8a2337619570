#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "draws.hpp"
#include "graphene_ndr/error.hpp"
#include "graphene_ndr/scattering.hpp"

using namespace graphene_ndr;
using graphene_ndr::testing::DrawRanges;
using graphene_ndr::testing::DrawSource;

namespace {

const double kHv = hbar_v_meV_nm(kDefaultFermiVelocity);

constexpr double deg(double d) { return d * kPi / 180.0; }

Barrier barrier(double height, double width) { return {height, width, kHv}; }

Errc error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::Io;
}

double max_amplitude_difference(const Amplitudes& x, const Amplitudes& y) {
    return std::max({std::abs(x.r - y.r), std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.t - y.t)});
}

}  // namespace

TEST_CASE("region_kinematics") {
    SUBCASE("hole-like barrier at normal incidence") {
        const auto r = region_kinematics(24.8, 0.0, 200.0, kHv, 2);
        CHECK(r.band_sign == -1);
        CHECK(r.propagating);
        // (200 - 24.8) / ħv_F
        CHECK(r.k_x == doctest::Approx(0.266359926441180161836).epsilon(1e-13));
        CHECK(r.angle == 0.0);
        CHECK(r.index == 2);
    }
    SUBCASE("incident region reproduces k_F cos(phi1)") {
        const double k_f = 24.8 / kHv;
        const auto r = region_kinematics(24.8, k_f * std::sin(deg(15)), 0.0, kHv, 1);
        CHECK(r.band_sign == 1);
        CHECK(r.k_x == doctest::Approx(k_f * std::cos(deg(15))).epsilon(1e-13));
        CHECK(r.angle == doctest::Approx(deg(15)).epsilon(1e-13));
    }
    SUBCASE("negative discriminant") {
        const double k_y = 0.00976;
        const double potential = 24.8 - 0.5 * kHv * k_y;  // |E - U| < ħv_F |k_y|
        const auto r = region_kinematics(24.8, k_y, potential, kHv);
        CHECK_FALSE(r.propagating);
        CHECK(r.k_x == 0.0);
    }
    SUBCASE("Dirac point is rejected") {
        CHECK(error_of([] { region_kinematics(50.0, 0.01, 50.0 + 5e-10, kHv); }) == Errc::DegenerateEnergy);
        CHECK_NOTHROW(region_kinematics(50.0, 0.01, 50.0 + 1e-8, kHv));
    }
}

TEST_CASE("region potentials follow the step bias model") {
    const auto u = region_potentials(200.0, 100.0);
    CHECK(u.source == 0.0);
    CHECK(u.barrier == 150.0);
    CHECK(u.drain == -100.0);
}

TEST_CASE("solve_barrier: reference cases") {
    SUBCASE("normal incidence transmits fully") {
        for (double v : {0.0, 37.0, 250.0, 580.0}) {
            const auto sol = solve_barrier(24.8, 0.0, v, barrier(200.0, 100.0));
            REQUIRE(sol.regime == Regime::Propagating);
            CHECK(std::abs(sol.transmission - 1.0) < 1e-9);
        }
    }
    SUBCASE("uniform medium") {
        for (double phi : {-40.0, 0.0, 15.0, 70.0}) {
            const double k_y = 24.8 / kHv * std::sin(deg(phi));
            const auto sol = solve_barrier(24.8, k_y, 0.0, barrier(0.0, 100.0));
            REQUIRE(sol.amplitudes.has_value());
            CHECK(std::abs(sol.amplitudes->r) < 1e-12);
            CHECK(std::abs(std::abs(sol.amplitudes->t) - 1.0) < 1e-12);
            CHECK(std::abs(sol.transmission - 1.0) < 1e-12);
        }
    }
    SUBCASE("Fabry-Perot resonance k2 D = pi") {
        const double e = 24.8, d = 100.0;
        const double k_y = e / kHv * std::sin(deg(15));
        // Oracle: choose V0 so the barrier wavevector is exactly pi/D.
        const double v0 = e + kHv * std::sqrt((kPi / d) * (kPi / d) + k_y * k_y);
        CHECK(v0 == doctest::Approx(46.4379788944620843).epsilon(1e-12));
        const auto sol = solve_barrier(e, k_y, 0.0, barrier(v0, d));
        CHECK(sol.regions[1].k_x * d == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(std::abs(sol.transmission - 1.0) < 1e-9);
        // off resonance the oblique barrier reflects
        CHECK(solve_barrier(e, k_y, 0.0, barrier(v0 + 7.0, d)).transmission < 0.999);
    }
    SUBCASE("bias inside the analytic gap gives total reflection") {
        const double e = 24.8, v0 = 200.0;
        const double k_y = e / kHv * std::sin(deg(15));
        const double centre = 2.0 * (v0 - e), half = 2.0 * kHv * k_y;
        for (double v : {centre - 0.9 * half, centre - 0.3 * half, centre + 0.5 * half, centre + 0.95 * half}) {
            const auto sol = solve_barrier(e, k_y, v, barrier(v0, 100.0));
            CHECK(sol.regime == Regime::BarrierGap);
            CHECK(sol.transmission == 0.0);
            CHECK(sol.reflection == 1.0);
            CHECK_FALSE(sol.amplitudes.has_value());
        }
        CHECK(solve_barrier(e, k_y, centre - 1.05 * half, barrier(v0, 100.0)).regime == Regime::Propagating);
        CHECK(solve_barrier(e, k_y, centre + 1.05 * half, barrier(v0, 100.0)).regime == Regime::Propagating);
    }
    SUBCASE("no outgoing mode") {
        const double k_y = 24.8 / kHv * std::sin(deg(15));
        const auto sol = solve_barrier(24.8, k_y, -20.0, barrier(200.0, 100.0));
        CHECK(sol.regime == Regime::NoOutputMode);
        CHECK(sol.transmission == 0.0);
    }
    SUBCASE("errors") {
        const double k_y = 24.8 / kHv * std::sin(deg(15));
        CHECK(error_of([&] { solve_barrier(3.0, k_y, 0.0, barrier(200.0, 100.0)); }) == Errc::NoInputMode);
        CHECK(error_of([&] { solve_barrier(24.8, k_y, 2.0 * (200.0 - 24.8), barrier(200.0, 100.0)); }) ==
              Errc::DegenerateEnergy);
        CHECK(error_of([&] { solve_barrier_oracle(3.0, k_y, 0.0, barrier(200.0, 100.0)); }) == Errc::NoInputMode);
    }
    SUBCASE("config overload matches") {
        DeviceConfig cfg;
        cfg.alpha = 0.3;
        cfg.incidence_deg = 15;
        const auto dq = derive(cfg);
        const auto a = solve_barrier(dq.fermi_energy_meV, dq.k_y, 120.0, cfg);
        const auto b = solve_barrier(dq.fermi_energy_meV, dq.k_y, 120.0, Barrier::from(cfg));
        CHECK(a.transmission == b.transmission);
    }
}

TEST_CASE("solve_barrier_oracle: reference cases") {
    const auto normal = solve_barrier_oracle(30.0, 0.0, 100.0, barrier(250.0, 60.0));
    CHECK(std::abs(normal.transmission - 1.0) < 1e-9);

    const double k_y = 24.8 / kHv * std::sin(deg(25));
    const auto uniform = solve_barrier_oracle(24.8, k_y, 0.0, barrier(0.0, 100.0));
    REQUIRE(uniform.amplitudes.has_value());
    CHECK(std::abs(uniform.amplitudes->r) < 1e-12);
}

TEST_CASE("closed_form_unbiased: limits") {
    CHECK(closed_form_unbiased(24.8, 0.0, 200.0, 100.0, kHv) == doctest::Approx(1.0).epsilon(1e-14));
    const double e = 24.8, d = 100.0;
    const double k_y = e / kHv * std::sin(deg(15));
    const double v0 = e + kHv * std::sqrt((kPi / d) * (kPi / d) + k_y * k_y);
    CHECK(std::abs(closed_form_unbiased(e, k_y, v0, d, kHv) - 1.0) < 1e-9);
    // inside the gap of the unbiased barrier
    CHECK(closed_form_unbiased(e, k_y, e + 0.5 * kHv * k_y, d, kHv) == 0.0);
    CHECK(error_of([&] { closed_form_unbiased(1.0, k_y, 200.0, d, kHv); }) == Errc::NoInputMode);
}

TEST_CASE("property: transfer matrix, dense oracle and closed form agree") {
    DrawSource src(2024);
    for (int i = 0; i < 2000; ++i) {
        const auto d = src.propagating();
        const auto tm = solve_barrier(d.energy_meV, d.k_y, d.bias_mV, d.barrier);
        const auto ge = solve_barrier_oracle(d.energy_meV, d.k_y, d.bias_mV, d.barrier);
        REQUIRE(tm.amplitudes.has_value());
        REQUIRE(ge.amplitudes.has_value());
        CHECK(max_amplitude_difference(*tm.amplitudes, *ge.amplitudes) < 1e-10);
    }
    DrawSource unbiased(99, DrawRanges{.bias_lo = 0.0, .bias_hi = 0.0});
    for (int i = 0; i < 1000; ++i) {
        const auto d = unbiased.propagating();
        const double numeric = solve_barrier(d.energy_meV, d.k_y, 0.0, d.barrier).transmission;
        const double closed = closed_form_unbiased(d.energy_meV, d.k_y, d.barrier.height_meV, d.barrier.width_nm,
                                                   d.barrier.hbar_vF);
        CHECK(std::abs(numeric - closed) < 1e-10);
    }
}

TEST_CASE("property: flux conservation and bounds") {
    DrawSource src(11, DrawRanges{.bias_lo = -600.0, .bias_hi = 600.0, .energy_lo = -120.0});
    int consistent = 0;
    for (int i = 0; i < 5000; ++i) {
        const auto d = src.any();
        if (!src.well_conditioned(d)) continue;
        const auto sol = solve_barrier(d.energy_meV, d.k_y, d.bias_mV, d.barrier);
        REQUIRE(sol.regime == Regime::Propagating);
        // R + T = 1 holds for every sign combination (pseudospin current);
        // mixed-band points can have R >> 1, so compare relative to R there.
        INFO("R=" << sol.reflection << " mixed=" << sol.mixed_band_signs);
        const double scale = sol.mixed_band_signs ? std::max(1.0, sol.reflection) : 1.0;
        CHECK(std::abs(sol.reflection + sol.transmission - 1.0) < 1e-10 * scale);
        CHECK(sol.mixed_band_signs == (sol.regions[0].band_sign != sol.regions[2].band_sign));
        if (!sol.mixed_band_signs) {
            ++consistent;
            CHECK(sol.transmission >= 0.0);
            CHECK(sol.transmission <= 1.0 + 1e-12);
        } else {
            CHECK(sol.transmission < 0.0);
        }
    }
    CHECK(consistent > 500);
}

TEST_CASE("property: Klein tunneling at normal incidence") {
    DrawSource src(5, DrawRanges{.normal_incidence = true});
    for (int i = 0; i < 1000; ++i) {
        const auto d = src.propagating();
        CHECK(std::abs(solve_barrier(d.energy_meV, 0.0, d.bias_mV, d.barrier).transmission - 1.0) < 1e-9);
    }
}

TEST_CASE("property: unbiased parity in k_y") {
    DrawSource src(17, DrawRanges{.bias_lo = 0.0, .bias_hi = 0.0});
    for (int i = 0; i < 1000; ++i) {
        const auto d = src.propagating();
        const double plus = solve_barrier(d.energy_meV, d.k_y, 0.0, d.barrier).transmission;
        const double minus = solve_barrier(d.energy_meV, -d.k_y, 0.0, d.barrier).transmission;
        CHECK(std::abs(plus - minus) < 1e-12);
    }
}

TEST_CASE("property: gap classification matches the analytic inequality") {
    DrawSource src(23);
    int gaps = 0;
    for (int i = 0; i < 20000; ++i) {
        auto d = src.any();
        // Bias the draw towards the gap so both outcomes are well populated.
        const double hvk = d.barrier.hbar_vF * std::abs(d.k_y);
        d.bias_mV = 2.0 * (d.barrier.height_meV - d.energy_meV) +
                    std::uniform_real_distribution<double>(-4.0, 4.0)(src.rng()) * hvk;
        const double lhs = std::abs(d.energy_meV - d.barrier.height_meV + 0.5 * d.bias_mV);
        if (std::abs(lhs - hvk) < 1e-9 || lhs < 1e-6) continue;
        const auto u = region_potentials(d.barrier.height_meV, d.bias_mV);
        if (std::abs(d.energy_meV - u.drain) < 1e-6) continue;
        if (!region_kinematics(d.energy_meV, d.k_y, 0.0, d.barrier.hbar_vF).propagating) continue;
        try {
            const auto sol = solve_barrier(d.energy_meV, d.k_y, d.bias_mV, d.barrier);
            const bool in_gap = lhs < hvk;
            CHECK((sol.regime == Regime::BarrierGap) == in_gap);
            gaps += in_gap;
        } catch (const Error& e) {
            CHECK(e.code() == Errc::GrazingOutput);
        }
    }
    CHECK(gaps > 1000);
}
