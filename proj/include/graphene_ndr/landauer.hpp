#ifndef GRAPHENE_NDR_LANDAUER_HPP
#define GRAPHENE_NDR_LANDAUER_HPP

// Finite-temperature Landauer current through the barrier at fixed transverse
// momentum k_y = k_F sin(phi1).
//
//   I(V) = ∫ T(E, k_y, V) [f(E - E_F) - f(E - E_F + eV)] dE
//
// Source chemical potential E_F, drain E_F - eV. Currents are in units of
// (2e/h) meV per transverse mode (spin included, valley not).

#include <vector>

#include "graphene_ndr/units.hpp"

namespace graphene_ndr {

/// Offset (meV) applied on both sides of every non-smooth point.
inline constexpr double kBreakpointGuard_meV = 1e-9;

struct IVPoint {
    double bias_mV = 0.0;
    double current = 0.0;
    long evaluations = 0;
    double est_error = 0.0;
    bool converged = true;
};

struct IVCurve {
    std::vector<IVPoint> points;
    DeviceConfig config;

    /// Number of points whose quadrature ran out of budget.
    int unconverged() const;
};

struct CurrentOptions {
    /// Upper limit is E_F + max(eV, 0) + window_kT * kT.
    double window_kT = 20.0;
    bool use_breakpoints = true;
};

struct EnergyWindow {
    double low_meV, high_meV;
};

/// 1/(1 + exp((E - mu)/kT)); the step function (1/2 at E = mu) for kT = 0.
double fermi_occupation(double energy_meV, double mu_meV, double kT_meV) noexcept;

/// f(E - mu_source) - f(E - mu_drain), evaluated without cancellation so it
/// has the sign of mu_source - mu_drain everywhere.
double occupation_window(double energy_meV, double mu_source_meV, double mu_drain_meV,
                         double kT_meV) noexcept;

/// Electron-branch integration window for a given bias.
EnergyWindow electron_window(double bias_mV, const DeviceConfig& cfg, double window_kT = 20.0);

/// Sorted, deduplicated energies strictly inside `window` where the integrand
/// is not smooth: band edges of all three regions and the barrier's Dirac
/// point, each offset by ±kBreakpointGuard_meV.
std::vector<double> integration_breakpoints(double bias_mV, double k_y, const DeviceConfig& cfg,
                                            const EnergyWindow& window);
std::vector<double> integration_breakpoints(double bias_mV, double k_y, const DeviceConfig& cfg);

IVPoint current(double bias_mV, const DeviceConfig& cfg, const CurrentOptions& options = {});

/// Uniform bias grid from cfg.bias_sweep. Near-zero nodes snap to exactly 0;
/// if the range brackets 0 but no node lands there, 0 is inserted.
std::vector<double> bias_grid(const BiasSweep& sweep);

/// Evaluates current() on the bias grid. `threads` = 0 picks the hardware
/// concurrency. The result does not depend on `threads`.
IVCurve iv_sweep(const DeviceConfig& cfg, unsigned threads = 1);

}  // namespace graphene_ndr

#endif
