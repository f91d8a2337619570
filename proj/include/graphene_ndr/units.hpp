#ifndef GRAPHENE_NDR_UNITS_HPP
#define GRAPHENE_NDR_UNITS_HPP

// Physical constants, device configuration and the derived kinematic scales.
//
// The numeric core works in meV and nm. Bias voltages are carried in mV, so
// for an electron eV in meV has the same numeric value as V in mV. SI only
// appears at the config boundary (v_F in m/s) and in the cutoff frequency.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace graphene_ndr {

inline constexpr double kPi = 3.14159265358979323846;

/// CODATA 2018 values (SI). h, e, k_B and c are exact; hbar is h/2π.
struct PhysicalConstants {
    static constexpr double h_planck = 6.62607015e-34;    // J s
    static constexpr double hbar = h_planck / (2.0 * kPi); // J s
    static constexpr double e_charge = 1.602176634e-19;   // C
    static constexpr double k_B = 1.380649e-23;           // J/K
    static constexpr double c_light = 299792458.0;        // m/s
};

/// Fermi velocity v_F = c/300, the usual graphene estimate.
inline constexpr double kDefaultFermiVelocity = PhysicalConstants::c_light / 300.0;
inline constexpr double kDefaultBarrierHeight_meV = 200.0;
inline constexpr double kDefaultTemperature_K = 300.0;
inline constexpr double kDefaultReferenceWavelength_nm = 50.0;

/// Spin degeneracy folded into the normalized current unit (2e/h) meV.
inline constexpr int kSpinDegeneracy = 2;
/// Valley degeneracy, NOT folded into the normalized current.
inline constexpr int kValleyDegeneracy = 2;

/// Multiply a normalized current (units of (2e/h) meV) by this to get amperes.
inline constexpr double kNormalizedCurrentToAmpere =
    kSpinDegeneracy * PhysicalConstants::e_charge / PhysicalConstants::h_planck *
    (1e-3 * PhysicalConstants::e_charge);

struct BiasSweep {
    double start_mV = 0.0;
    double stop_mV = 600.0;
    int count = 201;
};

struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct DeviceConfig {
    double fermi_velocity_m_s = kDefaultFermiVelocity;
    double width_nm = 100.0;
    double barrier_meV = kDefaultBarrierHeight_meV;
    // Exactly one of these two is set.
    std::optional<double> fermi_energy_meV;
    std::optional<double> alpha;
    double reference_wavelength_nm = kDefaultReferenceWavelength_nm;
    double incidence_deg = 0.0;
    double temperature_K = kDefaultTemperature_K;
    BiasSweep bias_sweep;
    QuadratureSpec quadrature;
    bool include_hole_branch = false;
};

struct DerivedQuantities {
    double hbar_vF = 0.0;          // meV nm
    double fermi_energy_meV = 0.0;
    double k_F = 0.0;              // 1/nm
    double k_y = 0.0;              // 1/nm
    double incidence_rad = 0.0;
    double thermal_energy_meV = 0.0;
};

/// ħ v in meV·nm for a velocity in m/s.
double hbar_v_meV_nm(double velocity_m_s) noexcept;

/// Parses a JSON config document. Throws Error(ConfigParse) on malformed
/// input and Error(ConfigValidation) naming the key on bad values.
DeviceConfig load_config(std::string_view document);
DeviceConfig load_config_file(const std::filesystem::path& path);

/// Throws Error(ConfigValidation) if any invariant is broken.
void validate(const DeviceConfig& cfg);

/// Fully-resolved config as JSON text (defaults included), loadable again.
std::string to_json(const DeviceConfig& cfg);

DerivedQuantities derive(const DeviceConfig& cfg);

}  // namespace graphene_ndr

#endif
