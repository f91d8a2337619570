#ifndef GRAPHENE_NDR_ANALYSIS_HPP
#define GRAPHENE_NDR_ANALYSIS_HPP

#include <optional>
#include <span>
#include <vector>

#include "graphene_ndr/landauer.hpp"
#include "graphene_ndr/units.hpp"

namespace graphene_ndr {

struct BiasInterval {
    double low_mV, high_mV;
    /// Kept separately: high - low cancels when the centre dwarfs the width.
    double width_mV;
    double width() const { return width_mV; }
};

struct TransmissionSample {
    double bias_mV;
    double transmission;
};

struct GapReport {
    double low_mV = 0.0;
    double high_mV = 0.0;
    std::optional<double> predicted_low_mV;
    std::optional<double> predicted_high_mV;
    double width_mV = 0.0;
};

struct NdrReport {
    double peak_bias_mV = 0.0;
    double peak_current = 0.0;
    double valley_bias_mV = 0.0;
    double valley_current = 0.0;
    double peak_to_valley = 0.0;
    /// Most negative central-difference dI/dV, normalized units per mV.
    double min_conductance = 0.0;
    double cutoff_THz = 0.0;
};

struct TrendVerdict {
    bool pvr_increasing = false;
    bool peak_decreasing = false;
    std::vector<double> parameters;
    std::vector<double> pvr;
    std::vector<double> peak_current;
};

/// Bias interval in which the barrier has no propagating mode at E = E_F:
/// |E_F - V0 + eV/2| < ħ v_F |k_y|. Throws Error(ZeroWidthGap) at phi1 = 0.
BiasInterval analytic_gap(const DeviceConfig& cfg);

/// Transmission at E = E_F and the config's k_y, on an arbitrary bias grid.
std::vector<TransmissionSample> transmission_vs_bias(const DeviceConfig& cfg, std::span<const double> biases_mV);

/// Longest contiguous run (>= 2 samples) with T <= threshold. Predicted
/// edges come from analytic_gap when the gap has nonzero width.
/// Throws Error(NoGapFound).
GapReport find_gap(std::span<const TransmissionSample> samples, const DeviceConfig& cfg,
                   double threshold = 1e-12);

/// First NDR region of the curve (V >= 0 part). Throws Error(NoNdrDetected).
NdrReport extract_ndr(const IVCurve& curve);

/// v_F / (2π D) in THz.
double cutoff_frequency(const DeviceConfig& cfg);

struct TrendEntry {
    double parameter;
    NdrReport report;
};

TrendVerdict trend_check(std::span<const TrendEntry> entries);

}  // namespace graphene_ndr

#endif
