#include "graphene_ndr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphene_ndr/error.hpp"
#include "graphene_ndr/scattering.hpp"

namespace graphene_ndr {

BiasInterval analytic_gap(const DeviceConfig& cfg) {
    const auto dq = derive(cfg);
    const double half_width = dq.hbar_vF * std::abs(dq.k_y);
    if (half_width == 0.0) throw Error(Errc::ZeroWidthGap, "phi1 = 0: the transmission gap has zero width");
    const double centre = 2.0 * (cfg.barrier_meV - dq.fermi_energy_meV);
    return {centre - 2.0 * half_width, centre + 2.0 * half_width, 4.0 * half_width};
}

std::vector<TransmissionSample> transmission_vs_bias(const DeviceConfig& cfg, std::span<const double> biases_mV) {
    const auto dq = derive(cfg);
    const auto barrier = Barrier::from(cfg);
    std::vector<TransmissionSample> samples;
    samples.reserve(biases_mV.size());
    for (double v : biases_mV) {
        double t = 0.0;
        try {
            t = solve_barrier(dq.fermi_energy_meV, dq.k_y, v, barrier).transmission;
        } catch (const Error&) {
            // Dirac point of a region or a grazing outgoing wave: no transmitted flux.
        }
        samples.push_back({v, t});
    }
    return samples;
}

GapReport find_gap(std::span<const TransmissionSample> samples, const DeviceConfig& cfg, double threshold) {
    std::size_t best_start = 0, best_len = 0;
    for (std::size_t i = 0; i < samples.size();) {
        if (samples[i].transmission > threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < samples.size() && samples[j].transmission <= threshold) ++j;
        if (j - i > best_len) {
            best_start = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len < 2) throw Error(Errc::NoGapFound, "no zero-transmission interval in the samples");

    GapReport report;
    report.low_mV = samples[best_start].bias_mV;
    report.high_mV = samples[best_start + best_len - 1].bias_mV;
    report.width_mV = report.high_mV - report.low_mV;
    try {
        const auto predicted = analytic_gap(cfg);
        report.predicted_low_mV = predicted.low_mV;
        report.predicted_high_mV = predicted.high_mV;
    } catch (const Error&) {
        // zero-width analytic gap: leave predictions empty
    }
    return report;
}

NdrReport extract_ndr(const IVCurve& curve) {
    std::vector<IVPoint> pts;
    std::copy_if(curve.points.begin(), curve.points.end(), std::back_inserter(pts),
                 [](const IVPoint& p) { return p.bias_mV >= 0.0; });
    if (pts.size() < 3) throw Error(Errc::NoNdrDetected, "too few non-negative bias points");

    std::size_t descent = pts.size();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1].current < pts[i].current) {
            descent = i;
            break;
        }
    }
    if (descent == pts.size()) throw Error(Errc::NoNdrDetected, "current is nondecreasing over the sweep");

    auto by_current = [](const IVPoint& x, const IVPoint& y) { return x.current < y.current; };
    const auto valley = std::min_element(pts.begin() + static_cast<long>(descent) + 1, pts.end(), by_current);
    const auto peak = std::max_element(pts.begin(), valley, by_current);
    if (!(valley->current > 0.0)) throw Error(Errc::NoNdrDetected, "valley current is not positive");

    NdrReport report;
    report.peak_bias_mV = peak->bias_mV;
    report.peak_current = peak->current;
    report.valley_bias_mV = valley->bias_mV;
    report.valley_current = valley->current;
    report.peak_to_valley = peak->current / valley->current;

    report.min_conductance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double slope = (pts[i + 1].current - pts[i - 1].current) / (pts[i + 1].bias_mV - pts[i - 1].bias_mV);
        report.min_conductance = std::min(report.min_conductance, slope);
    }
    report.cutoff_THz = cutoff_frequency(curve.config);
    return report;
}

double cutoff_frequency(const DeviceConfig& cfg) {
    return cfg.fermi_velocity_m_s / (2.0 * kPi * cfg.width_nm * 1e-9) * 1e-12;
}

TrendVerdict trend_check(std::span<const TrendEntry> entries) {
    TrendVerdict verdict;
    for (const auto& e : entries) {
        verdict.parameters.push_back(e.parameter);
        verdict.pvr.push_back(e.report.peak_to_valley);
        verdict.peak_current.push_back(e.report.peak_current);
    }
    verdict.pvr_increasing = std::adjacent_find(verdict.pvr.begin(), verdict.pvr.end(),
                                                std::greater_equal<>()) == verdict.pvr.end();
    verdict.peak_decreasing = std::adjacent_find(verdict.peak_current.begin(), verdict.peak_current.end(),
                                                 std::less_equal<>()) == verdict.peak_current.end();
    if (entries.size() < 2) verdict.pvr_increasing = verdict.peak_decreasing = false;
    return verdict;
}

}  // namespace graphene_ndr
