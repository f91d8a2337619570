#include "graphene_ndr/landauer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "graphene_ndr/error.hpp"
#include "graphene_ndr/quadrature.hpp"
#include "graphene_ndr/scattering.hpp"

namespace graphene_ndr {

namespace {

// Transmission as the current integrand sees it: points the solver rejects
// (degenerate, grazing, no input) and mixed-band points contribute nothing.
double integrand_transmission(double energy_meV, double k_y, double bias_mV, const Barrier& barrier) {
    try {
        const auto sol = solve_barrier(energy_meV, k_y, bias_mV, barrier);
        return sol.mixed_band_signs ? 0.0 : sol.transmission;
    } catch (const Error&) {
        return 0.0;
    }
}

void append_panel(std::vector<double>& edges, const EnergyWindow& window, std::vector<double> inner) {
    edges.push_back(window.low_meV);
    edges.insert(edges.end(), inner.begin(), inner.end());
    edges.push_back(window.high_meV);
}

}  // namespace

int IVCurve::unconverged() const {
    return static_cast<int>(std::count_if(points.begin(), points.end(),
                                          [](const IVPoint& p) { return !p.converged; }));
}

double fermi_occupation(double energy_meV, double mu_meV, double kT_meV) noexcept {
    const double delta = energy_meV - mu_meV;
    if (kT_meV <= 0.0) {
        if (delta < 0) return 1.0;
        if (delta > 0) return 0.0;
        return 0.5;
    }
    const double x = delta / kT_meV;
    if (x > 0) {
        const double tail = std::exp(-x);
        return tail / (1.0 + tail);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double occupation_window(double energy_meV, double mu_source_meV, double mu_drain_meV,
                         double kT_meV) noexcept {
    if (mu_source_meV == mu_drain_meV) return 0.0;
    if (mu_source_meV < mu_drain_meV) {
        return -occupation_window(energy_meV, mu_drain_meV, mu_source_meV, kT_meV);
    }
    if (kT_meV <= 0.0) {
        return fermi_occupation(energy_meV, mu_source_meV, 0.0) -
               fermi_occupation(energy_meV, mu_drain_meV, 0.0);
    }
    const double a = (energy_meV - mu_source_meV) / kT_meV;
    const double b = (energy_meV - mu_drain_meV) / kT_meV;  // a < b
    if (a >= 0.0) {
        // both above their chemical potentials: factor out e^{-a}
        const double ea = std::exp(-a), eb = std::exp(-b);
        return ea * -std::expm1(a - b) / ((1.0 + ea) * (1.0 + eb));
    }
    if (b <= 0.0) {
        // both below: 1 - f(x) = f(-x) turns this into the case above
        const double ea = std::exp(a), eb = std::exp(b);
        return eb * -std::expm1(a - b) / ((1.0 + ea) * (1.0 + eb));
    }
    return 1.0 / (1.0 + std::exp(a)) - std::exp(-b) / (1.0 + std::exp(-b));
}

EnergyWindow electron_window(double bias_mV, const DeviceConfig& cfg, double window_kT) {
    const auto dq = derive(cfg);
    const double band_edge = std::max(dq.hbar_vF * std::abs(dq.k_y), 0.0);
    return {band_edge + kBreakpointGuard_meV,
            dq.fermi_energy_meV + std::abs(bias_mV) + window_kT * dq.thermal_energy_meV};
}

std::vector<double> integration_breakpoints(double bias_mV, double k_y, const DeviceConfig& cfg,
                                            const EnergyWindow& window) {
    const double hv = hbar_v_meV_nm(cfg.fermi_velocity_m_s);
    const double edge = hv * std::abs(k_y);
    const auto u = region_potentials(cfg.barrier_meV, bias_mV);

    const double singular[] = {
        edge,         -edge,                  // source band edges
        u.barrier - edge, u.barrier, u.barrier + edge,
        u.drain - edge,   u.drain,   u.drain + edge,
    };
    std::vector<double> points;
    for (double e : singular) {
        for (double p : {e - kBreakpointGuard_meV, e + kBreakpointGuard_meV}) {
            if (p > window.low_meV && p < window.high_meV) points.push_back(p);
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

std::vector<double> integration_breakpoints(double bias_mV, double k_y, const DeviceConfig& cfg) {
    return integration_breakpoints(bias_mV, k_y, cfg, electron_window(bias_mV, cfg));
}

IVPoint current(double bias_mV, const DeviceConfig& cfg, const CurrentOptions& options) {
    IVPoint point;
    point.bias_mV = bias_mV;
    if (bias_mV == 0.0) return point;

    const auto dq = derive(cfg);
    const auto barrier = Barrier::from(cfg);
    const double k_y = dq.k_y;
    const double kT = dq.thermal_energy_meV;
    const double mu_source = dq.fermi_energy_meV;
    const double mu_drain = dq.fermi_energy_meV - bias_mV;

    auto inner_points = [&](const EnergyWindow& window) {
        std::vector<double> inner;
        if (options.use_breakpoints) {
            inner = integration_breakpoints(bias_mV, k_y, cfg, window);
            if (kT <= 0.0) {
                // Occupations are steps at zero temperature.
                for (double mu : {mu_source, mu_drain}) {
                    if (mu > window.low_meV && mu < window.high_meV) inner.push_back(mu);
                }
                std::sort(inner.begin(), inner.end());
            }
        }
        return inner;
    };

    const auto electrons = electron_window(bias_mV, cfg, options.window_kT);
    std::vector<double> edges;
    if (cfg.include_hole_branch) {
        // Mirrored branch below -ħv|k_y|; the panel between the branches lies
        // in the incident band gap where the integrand is exactly zero.
        const EnergyWindow holes{std::min(mu_source, mu_drain) - options.window_kT * kT,
                                 -dq.hbar_vF * std::abs(k_y) - kBreakpointGuard_meV};
        if (holes.low_meV < holes.high_meV) append_panel(edges, holes, inner_points(holes));
    }
    append_panel(edges, electrons, inner_points(electrons));

    auto integrand = [&](double energy) {
        const double window = occupation_window(energy, mu_source, mu_drain, kT);
        if (window == 0.0) return 0.0;
        return integrand_transmission(energy, k_y, bias_mV, barrier) * window;
    };
    const auto result = integrate_panels(integrand, edges, cfg.quadrature);

    point.current = result.value;
    point.est_error = result.error;
    point.evaluations = result.evaluations;
    point.converged = result.converged;
    return point;
}

std::vector<double> bias_grid(const BiasSweep& sweep) {
    std::vector<double> grid(static_cast<std::size_t>(sweep.count));
    const double step = (sweep.stop_mV - sweep.start_mV) / (sweep.count - 1);
    for (int i = 0; i < sweep.count; ++i) {
        double v = (i == sweep.count - 1) ? sweep.stop_mV : sweep.start_mV + i * step;
        if (std::abs(v) < 1e-9 * step) v = 0.0;
        grid[static_cast<std::size_t>(i)] = v;
    }
    if (sweep.start_mV < 0.0 && sweep.stop_mV > 0.0 &&
        std::find(grid.begin(), grid.end(), 0.0) == grid.end()) {
        grid.insert(std::upper_bound(grid.begin(), grid.end(), 0.0), 0.0);
    }
    return grid;
}

IVCurve iv_sweep(const DeviceConfig& cfg, unsigned threads) {
    const auto grid = bias_grid(cfg.bias_sweep);
    IVCurve curve;
    curve.config = cfg;
    curve.points.resize(grid.size());

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            curve.points[i] = current(grid[i], cfg);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return curve;
}

}  // namespace graphene_ndr
