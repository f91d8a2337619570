#ifndef GRAPHENE_NDR_SCATTERING_HPP
#define GRAPHENE_NDR_SCATTERING_HPP

// Three-region Dirac scattering for a single biased graphene barrier.
//
// Region j (1 = source, 2 = barrier, 3 = drain) carries the spinor
//
//   A (1,  s e^{+iφ}) e^{+i k x} + B (1, -s e^{-iφ}) e^{-i k x},
//
// with s = sgn(E - U_j), k the non-negative longitudinal wavevector and
// φ = atan(k_y / k) in (-π/2, π/2). Amplitudes are (1, r) in region 1,
// (a, b) in region 2 and (t, 0) in region 3. The applied bias is modeled as
// a step: U_1 = 0, U_2 = V0 - eV/2, U_3 = -eV.

#include <complex>
#include <optional>
#include <string_view>

#include "graphene_ndr/units.hpp"

namespace graphene_ndr {

using Complex = std::complex<double>;

/// |E - U| at or below this (meV) is treated as the Dirac point of a region.
inline constexpr double kDegeneracyGuard_meV = 1e-9;
/// |cos φ3| below this makes the flux normalization singular.
inline constexpr double kGrazingGuard = 1e-9;
/// Pivot magnitude below which the dense oracle reports a singular system.
inline constexpr double kPivotGuard = 1e-13;

struct RegionState {
    int index = 0;
    double potential_meV = 0.0;
    int band_sign = 1;
    double k_x = 0.0;   // 1/nm, 0 when not propagating
    double angle = 0.0; // rad
    bool propagating = false;
};

enum class Regime { Propagating, BarrierGap, NoOutputMode, NoInputMode };

std::string_view to_string(Regime regime) noexcept;

struct Amplitudes {
    Complex r, a, b, t;
};

struct ScatteringSolution {
    Regime regime = Regime::Propagating;
    /// Present only for Regime::Propagating.
    std::optional<Amplitudes> amplitudes;
    double transmission = 0.0;
    double reflection = 0.0;
    /// s1 != s3: the outer regions sit in different bands. The transmission
    /// s3 cos φ3 |t|^2 / (s1 cos φ1) is then negative; no convention is
    /// imposed here, callers decide how to treat such points.
    bool mixed_band_signs = false;
    RegionState regions[3];
};

/// The barrier as seen by the scattering solver: everything it needs from a
/// DeviceConfig, pre-converted to the internal units.
struct Barrier {
    double height_meV = 0.0;
    double width_nm = 0.0;
    double hbar_vF = 0.0;

    static Barrier from(const DeviceConfig& cfg);
};

struct RegionPotentials {
    double source, barrier, drain;
};

constexpr RegionPotentials region_potentials(double barrier_meV, double bias_mV) noexcept {
    return {0.0, barrier_meV - 0.5 * bias_mV, -bias_mV};
}

/// Throws Error(DegenerateEnergy) when |E - U| <= kDegeneracyGuard_meV.
RegionState region_kinematics(double energy_meV, double k_y, double potential_meV, double hbar_vF,
                              int index = 0);
RegionState region_kinematics(double energy_meV, double k_y, double potential_meV,
                              const DerivedQuantities& dq, int index = 0);

/// Transfer-matrix solution, one 2x2 inversion per interface.
ScatteringSolution solve_barrier(double energy_meV, double k_y, double bias_mV, const Barrier& barrier);
ScatteringSolution solve_barrier(double energy_meV, double k_y, double bias_mV, const DeviceConfig& cfg);

/// Same contract as solve_barrier, but assembles the four continuity
/// equations as a dense 4x4 system and solves it by Gaussian elimination.
/// Kept independent of the transfer-matrix path so each checks the other.
ScatteringSolution solve_barrier_oracle(double energy_meV, double k_y, double bias_mV,
                                        const Barrier& barrier);
ScatteringSolution solve_barrier_oracle(double energy_meV, double k_y, double bias_mV,
                                        const DeviceConfig& cfg);

/// Unbiased transmission in closed form, from eliminating (a, b) analytically:
///
///   T = cos²φ1 cos²φ2 / ( [cos(k2 D) cos φ1 cos φ2]² + sin²(k2 D) (1 - s1 s2 sin φ1 sin φ2)² )
///
/// Returns 0 in the barrier gap. Regions 1 and 3 must propagate.
double closed_form_unbiased(double energy_meV, double k_y, double barrier_meV, double width_nm,
                            double hbar_vF);

}  // namespace graphene_ndr

#endif
