#include "graphene_ndr/units.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "graphene_ndr/error.hpp"

namespace graphene_ndr {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& key, const std::string& constraint) {
    throw Error(Errc::ConfigValidation, "config key '" + key + "': " + constraint);
}

double number_at(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_number()) invalid(path, "expected a number");
    return v.get<double>();
}

int integer_at(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) invalid(path, "expected an integer");
    return v.get<int>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key)) invalid(prefix + key, "unknown key");
    }
}

void read_bias_sweep(const json& node, BiasSweep& sweep) {
    if (!node.is_object()) invalid("bias_sweep", "expected an object {start, stop, count}");
    reject_unknown(node, {"start", "stop", "count"}, "bias_sweep.");
    for (const char* key : {"start", "stop", "count"}) {
        if (!node.contains(key)) invalid(std::string("bias_sweep.") + key, "required");
    }
    sweep.start_mV = number_at(node, "start", "bias_sweep.start");
    sweep.stop_mV = number_at(node, "stop", "bias_sweep.stop");
    sweep.count = integer_at(node, "count", "bias_sweep.count");
}

void read_quadrature(const json& node, QuadratureSpec& spec) {
    if (!node.is_object()) invalid("quadrature", "expected an object");
    reject_unknown(node, {"rel_tol", "abs_tol", "max_subdivisions"}, "quadrature.");
    if (node.contains("rel_tol")) spec.rel_tol = number_at(node, "rel_tol", "quadrature.rel_tol");
    if (node.contains("abs_tol")) spec.abs_tol = number_at(node, "abs_tol", "quadrature.abs_tol");
    if (node.contains("max_subdivisions"))
        spec.max_subdivisions = integer_at(node, "max_subdivisions", "quadrature.max_subdivisions");
}

}  // namespace

double hbar_v_meV_nm(double velocity_m_s) noexcept {
    // J m -> meV nm
    return PhysicalConstants::hbar * velocity_m_s / PhysicalConstants::e_charge * 1e3 * 1e9;
}

DeviceConfig load_config(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw Error(Errc::ConfigParse, std::string("malformed config document: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::ConfigParse, "config document must be a JSON object");

    reject_unknown(doc,
                   {"v_F", "D", "V0", "E_F", "alpha", "lambda_F0", "phi1", "temperature",
                    "bias_sweep", "quadrature", "include_hole_branch"},
                   "");

    DeviceConfig cfg;
    for (const char* key : {"D", "phi1"}) {
        if (!doc.contains(key)) invalid(key, "required");
    }
    cfg.width_nm = number_at(doc, "D", "D");
    cfg.incidence_deg = number_at(doc, "phi1", "phi1");
    if (doc.contains("v_F")) cfg.fermi_velocity_m_s = number_at(doc, "v_F", "v_F");
    if (doc.contains("V0")) cfg.barrier_meV = number_at(doc, "V0", "V0");
    if (doc.contains("E_F")) cfg.fermi_energy_meV = number_at(doc, "E_F", "E_F");
    if (doc.contains("alpha")) cfg.alpha = number_at(doc, "alpha", "alpha");
    if (doc.contains("lambda_F0"))
        cfg.reference_wavelength_nm = number_at(doc, "lambda_F0", "lambda_F0");
    if (doc.contains("temperature")) cfg.temperature_K = number_at(doc, "temperature", "temperature");
    if (doc.contains("bias_sweep")) read_bias_sweep(doc.at("bias_sweep"), cfg.bias_sweep);
    if (doc.contains("quadrature")) read_quadrature(doc.at("quadrature"), cfg.quadrature);
    if (doc.contains("include_hole_branch")) {
        const auto& v = doc.at("include_hole_branch");
        if (!v.is_boolean()) invalid("include_hole_branch", "expected a boolean");
        cfg.include_hole_branch = v.get<bool>();
    }

    validate(cfg);
    return cfg;
}

DeviceConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ConfigParse, "cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return load_config(text.str());
}

void validate(const DeviceConfig& cfg) {
    auto finite = [](double x) { return std::isfinite(x); };

    if (cfg.fermi_energy_meV.has_value() == cfg.alpha.has_value())
        invalid("E_F/alpha", "exactly one of E_F/alpha must be given");
    if (!finite(cfg.fermi_velocity_m_s) || cfg.fermi_velocity_m_s <= 0) invalid("v_F", "must be > 0");
    if (!finite(cfg.width_nm) || cfg.width_nm <= 0) invalid("D", "must be > 0");
    if (!finite(cfg.barrier_meV)) invalid("V0", "must be finite");
    if (cfg.fermi_energy_meV && (!finite(*cfg.fermi_energy_meV) || *cfg.fermi_energy_meV <= 0))
        invalid("E_F", "must be > 0");
    if (cfg.alpha && (!finite(*cfg.alpha) || *cfg.alpha <= 0))
        invalid("alpha", "must be > 0 (E_F > 0)");
    if (!finite(cfg.reference_wavelength_nm) || cfg.reference_wavelength_nm <= 0)
        invalid("lambda_F0", "must be > 0");
    if (!finite(cfg.incidence_deg) || std::abs(cfg.incidence_deg) >= 90.0)
        invalid("phi1", "must satisfy |phi1| < 90 degrees");
    if (!finite(cfg.temperature_K) || cfg.temperature_K < 0) invalid("temperature", "must be >= 0");

    const auto& sweep = cfg.bias_sweep;
    if (sweep.count < 2) invalid("bias_sweep.count", "must be >= 2");
    if (!finite(sweep.start_mV) || !finite(sweep.stop_mV) || !(sweep.start_mV < sweep.stop_mV))
        invalid("bias_sweep", "start < stop required");

    const auto& quad = cfg.quadrature;
    if (!(quad.rel_tol > 0)) invalid("quadrature.rel_tol", "must be > 0");
    if (!(quad.abs_tol >= 0)) invalid("quadrature.abs_tol", "must be >= 0");
    if (quad.max_subdivisions < 16) invalid("quadrature.max_subdivisions", "must be >= 16");
}

std::string to_json(const DeviceConfig& cfg) {
    json doc;
    doc["v_F"] = cfg.fermi_velocity_m_s;
    doc["D"] = cfg.width_nm;
    doc["V0"] = cfg.barrier_meV;
    if (cfg.fermi_energy_meV) doc["E_F"] = *cfg.fermi_energy_meV;
    if (cfg.alpha) doc["alpha"] = *cfg.alpha;
    doc["lambda_F0"] = cfg.reference_wavelength_nm;
    doc["phi1"] = cfg.incidence_deg;
    doc["temperature"] = cfg.temperature_K;
    doc["bias_sweep"] = {{"start", cfg.bias_sweep.start_mV},
                         {"stop", cfg.bias_sweep.stop_mV},
                         {"count", cfg.bias_sweep.count}};
    doc["quadrature"] = {{"rel_tol", cfg.quadrature.rel_tol},
                         {"abs_tol", cfg.quadrature.abs_tol},
                         {"max_subdivisions", cfg.quadrature.max_subdivisions}};
    doc["include_hole_branch"] = cfg.include_hole_branch;
    return doc.dump(2) + "\n";
}

DerivedQuantities derive(const DeviceConfig& cfg) {
    DerivedQuantities dq;
    dq.hbar_vF = hbar_v_meV_nm(cfg.fermi_velocity_m_s);
    if (cfg.alpha) {
        dq.k_F = *cfg.alpha * 2.0 * kPi / cfg.reference_wavelength_nm;
        dq.fermi_energy_meV = dq.hbar_vF * dq.k_F;
    } else {
        dq.fermi_energy_meV = cfg.fermi_energy_meV.value_or(0.0);
        dq.k_F = dq.fermi_energy_meV / dq.hbar_vF;
    }
    dq.incidence_rad = cfg.incidence_deg * kPi / 180.0;
    dq.k_y = dq.k_F * std::sin(dq.incidence_rad);
    dq.thermal_energy_meV =
        PhysicalConstants::k_B * cfg.temperature_K / PhysicalConstants::e_charge * 1e3;
    return dq;
}

}  // namespace graphene_ndr
