#include "graphene_ndr/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "graphene_ndr/analysis.hpp"
#include "graphene_ndr/csv.hpp"
#include "graphene_ndr/error.hpp"
#include "graphene_ndr/landauer.hpp"
#include "graphene_ndr/scattering.hpp"
#include "graphene_ndr/svg.hpp"

namespace graphene_ndr::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void usage(const std::string& message) {
    throw Error(Errc::ConfigValidation, message);
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        usage("cannot parse " + what + " from '" + text + "'");
    }
}

std::string label(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
}

// Collects the files of one run. Files are written via a temporary name and
// renamed into place; on failure everything written so far is removed.
class OutputSession {
public:
    OutputSession(std::string command, fs::path dir)
        : start_(std::chrono::steady_clock::now()), dir_(std::move(dir)) {
        manifest_.command = std::move(command);
    }

    void write(const std::string& name, const std::string& content) {
        if (manifest_.outputs.empty() && pending_.empty()) {
            // a manifest from an earlier run no longer describes this directory
            std::error_code ec;
            fs::remove(dir_ / "manifest.json", ec);
        }
        const fs::path target = dir_ / name;
        const fs::path partial = dir_ / (name + ".partial");
        {
            std::ofstream out(partial, std::ios::binary | std::ios::trunc);
            if (!out) throw Error(Errc::Io, "cannot write " + partial.string());
            out << content;
            if (!out.flush()) throw Error(Errc::Io, "write failed for " + partial.string());
        }
        pending_.push_back(partial);
        fs::rename(partial, target);
        pending_.pop_back();
        manifest_.outputs.push_back(target);
    }

    void set_config(const DeviceConfig& cfg) {
        manifest_.resolved_config = to_json(cfg);
        write("resolved_config.json", manifest_.resolved_config);
    }

    void warn(std::string message) { manifest_.warnings.push_back(std::move(message)); }

    void finish() {
        manifest_.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const fs::path target = dir_ / "manifest.json";
        std::ofstream out(target, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::Io, "cannot write " + target.string());
        out << manifest_.to_json();
    }

    void abandon() noexcept {
        std::error_code ec;
        for (const auto& p : pending_) fs::remove(p, ec);
        for (const auto& p : manifest_.outputs) fs::remove(p, ec);
    }

private:
    std::chrono::steady_clock::time_point start_;
    fs::path dir_;
    RunManifest manifest_;
    std::vector<fs::path> pending_;
};

DeviceConfig require_config(const Options& opts) {
    if (!opts.config) usage("command '" + opts.command + "' needs --config PATH");
    return load_config_file(*opts.config);
}

void record_quadrature_warnings(const IVCurve& curve, OutputSession& session, const std::string& tag) {
    for (const auto& p : curve.points) {
        if (!p.converged) {
            session.warn(tag + "quadrature budget exceeded at V=" + csv::format_double(p.bias_mV) +
                         " mV (est_error=" + csv::format_double(p.est_error) + ")");
        }
    }
}

void cmd_transmission(const Options& opts, OutputSession& session) {
    const auto cfg = require_config(opts);
    SweepSpec sweep{SweepSpec::Variable::Bias, cfg.bias_sweep.start_mV, cfg.bias_sweep.stop_mV,
                    cfg.bias_sweep.count};
    if (opts.sweep) sweep = parse_sweep(*opts.sweep);
    if (sweep.variable == SweepSpec::Variable::Angle &&
        (std::abs(sweep.start) >= 90.0 || std::abs(sweep.stop) >= 90.0)) {
        usage("phi1 sweep must stay inside (-90, 90) degrees");
    }
    session.set_config(cfg);

    const auto dq = derive(cfg);
    const auto barrier = Barrier::from(cfg);
    csv::Table table;
    table.header = {"x", "T", "regime"};
    svg::Series series{"T", {}, {}};

    for (int i = 0; i < sweep.count; ++i) {
        const double x = (i == sweep.count - 1) ? sweep.stop
                                                : sweep.start + i * (sweep.stop - sweep.start) / (sweep.count - 1);
        double energy = dq.fermi_energy_meV, k_y = dq.k_y, bias = opts.bias_mV;
        switch (sweep.variable) {
            case SweepSpec::Variable::Bias: bias = x; break;
            case SweepSpec::Variable::Energy: energy = x; break;
            case SweepSpec::Variable::Angle: k_y = dq.k_F * std::sin(x * kPi / 180.0); break;
        }
        double t = 0.0;
        std::string regime;
        try {
            const auto sol = solve_barrier(energy, k_y, bias, barrier);
            t = sol.transmission;
            regime = std::string(to_string(sol.regime));
        } catch (const Error& e) {
            regime = std::string(to_string(e.code()));
        }
        table.rows.push_back({csv::format_double(x), csv::format_double(t), regime});
        series.x.push_back(x);
        series.y.push_back(t);
    }
    session.write("transmission.csv", table.str());

    if (opts.svg) {
        const char* axis[] = {"V (mV)", "E (meV)", "phi1 (deg)"};
        svg::Plot plot{"Transmission", axis[static_cast<int>(sweep.variable)], "T", {series}, {}};
        session.write("transmission.svg", svg::render(plot));
    }
}

svg::Plot iv_plot(const IVCurve& curve, const std::string& title) {
    svg::Series s{"I", {}, {}};
    for (const auto& p : curve.points) {
        s.x.push_back(p.bias_mV);
        s.y.push_back(p.current);
    }
    return {title, "V (mV)", "I ((2e/h) meV)", {s}, {}};
}

void cmd_iv(const Options& opts, OutputSession& session) {
    const auto cfg = require_config(opts);
    session.set_config(cfg);
    const auto curve = iv_sweep(cfg, opts.threads);
    record_quadrature_warnings(curve, session, "");
    session.write("iv.csv", csv::iv_table(curve).str());
    if (opts.svg) session.write("iv.svg", svg::render(iv_plot(curve, "I-V")));
}

json ndr_json(const NdrReport& r) {
    return {{"V_peak_mV", r.peak_bias_mV},     {"I_peak", r.peak_current},
            {"V_valley_mV", r.valley_bias_mV}, {"I_valley", r.valley_current},
            {"pvr", r.peak_to_valley},         {"min_dIdV", r.min_conductance},
            {"f_c_THz", r.cutoff_THz}};
}

void cmd_analyze(const Options& opts, OutputSession& session) {
    const fs::path iv_path = opts.iv_csv.value_or(opts.out_dir / "iv.csv");
    DeviceConfig cfg;
    if (opts.config) {
        cfg = load_config_file(*opts.config);
    } else if (fs::exists(iv_path.parent_path() / "resolved_config.json")) {
        cfg = load_config_file(iv_path.parent_path() / "resolved_config.json");
    } else {
        usage("analyze needs --config PATH (or resolved_config.json next to the I-V table)");
    }

    IVCurve curve;
    curve.config = cfg;
    try {
        curve.points = csv::read_iv(iv_path);
    } catch (const Error& e) {
        throw Error(e.code(), iv_path.string() + ": " + e.what());
    }
    session.set_config(cfg);

    json report;
    report["source"] = iv_path.string();
    report["current_unit"] = "(2e/h) meV per transverse mode";
    report["ampere_per_unit"] = kNormalizedCurrentToAmpere;
    report["f_c_THz"] = cutoff_frequency(cfg);

    svg::Plot plot = iv_plot(curve, "I-V analysis");
    try {
        const auto ndr = extract_ndr(curve);
        report["ndr_detected"] = true;
        report["ndr"] = ndr_json(ndr);
        plot.markers.push_back({"peak", ndr.peak_bias_mV, ndr.peak_current});
        plot.markers.push_back({"valley", ndr.valley_bias_mV, ndr.valley_current});
    } catch (const Error& e) {
        if (e.code() != Errc::NoNdrDetected) throw;
        report["ndr_detected"] = false;
        report["ndr"] = nullptr;
        report["ndr_message"] = e.what();
    }

    std::vector<double> biases;
    for (const auto& p : curve.points) biases.push_back(p.bias_mV);
    report["gap"] = nullptr;
    if (biases.size() >= 3) {
        try {
            const auto samples = transmission_vs_bias(cfg, biases);
            const auto gap = find_gap(samples, cfg);
            json g = {{"V_low_mV", gap.low_mV}, {"V_high_mV", gap.high_mV}, {"width_mV", gap.width_mV}};
            g["predicted_low_mV"] = gap.predicted_low_mV ? json(*gap.predicted_low_mV) : json(nullptr);
            g["predicted_high_mV"] = gap.predicted_high_mV ? json(*gap.predicted_high_mV) : json(nullptr);
            report["gap"] = g;
        } catch (const Error& e) {
            if (e.code() != Errc::NoGapFound) throw;
        }
    }

    session.write("report.json", report.dump(2) + "\n");
    if (opts.svg) session.write("report.svg", svg::render(plot));
}

std::string wide_table(const std::vector<double>& x, const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& columns) {
    csv::Table table;
    table.header.push_back("V_mV");
    table.header.insert(table.header.end(), labels.begin(), labels.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<std::string> row{csv::format_double(x[i])};
        for (const auto& col : columns) row.push_back(csv::format_double(col[i]));
        table.rows.push_back(std::move(row));
    }
    return table.str();
}

void cmd_figures(const Options& opts, OutputSession& session) {
    const DeviceConfig base = opts.config ? load_config_file(*opts.config) : load_config(kFigureBaseConfig);
    session.set_config(base);

    auto plot_of = [](const std::string& title, const std::string& y_label, const std::vector<double>& x,
                      const std::vector<std::string>& labels, const std::vector<std::vector<double>>& cols) {
        svg::Plot plot{title, "V (mV)", y_label, {}, {}};
        for (std::size_t k = 0; k < cols.size(); ++k) plot.series.push_back({labels[k], x, cols[k]});
        return plot;
    };

    // Fig. 2: transmission at E_F on a 1 mV grid.
    {
        BiasSweep fine = base.bias_sweep;
        fine.count = std::max(2, static_cast<int>(std::lround(fine.stop_mV - fine.start_mV)) + 1);
        const auto grid = bias_grid(fine);
        std::vector<std::string> labels;
        std::vector<std::vector<double>> cols;
        for (const auto& cfg : alpha_family(base)) {
            labels.push_back("T_alpha_" + label(*cfg.alpha));
            std::vector<double> col;
            for (const auto& s : transmission_vs_bias(cfg, grid)) col.push_back(s.transmission);
            cols.push_back(std::move(col));
        }
        session.write("fig2.csv", wide_table(grid, labels, cols));
        if (opts.svg) session.write("fig2.svg", svg::render(plot_of("Transmission vs bias", "T", grid, labels, cols)));
    }

    auto iv_family = [&](const std::vector<DeviceConfig>& family, const std::string& name,
                         auto&& column_label) {
        std::vector<std::string> labels;
        std::vector<std::vector<double>> cols;
        std::vector<double> grid;
        for (const auto& cfg : family) {
            const auto curve = iv_sweep(cfg, opts.threads);
            const std::string col_label = column_label(cfg);
            record_quadrature_warnings(curve, session, name + "/" + col_label + ": ");
            grid.clear();
            std::vector<double> col;
            for (const auto& p : curve.points) {
                grid.push_back(p.bias_mV);
                col.push_back(p.current);
            }
            labels.push_back(col_label);
            cols.push_back(std::move(col));
        }
        session.write(name + ".csv", wide_table(grid, labels, cols));
        if (opts.svg) {
            session.write(name + ".svg", svg::render(plot_of("I-V " + name, "I ((2e/h) meV)", grid, labels, cols)));
        }
    };
    iv_family(alpha_family(base), "fig3", [](const DeviceConfig& c) { return "I_alpha_" + label(*c.alpha); });
    iv_family(angle_family(base), "fig4", [](const DeviceConfig& c) { return "I_phi1_" + label(c.incidence_deg); });
}

}  // namespace

SweepSpec parse_sweep(std::string_view text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    if (parts.size() != 4) usage("sweep must look like <V|E|phi1>:<start>:<stop>:<count>");

    SweepSpec spec;
    if (parts[0] == "V") {
        spec.variable = SweepSpec::Variable::Bias;
    } else if (parts[0] == "E") {
        spec.variable = SweepSpec::Variable::Energy;
    } else if (parts[0] == "phi1") {
        spec.variable = SweepSpec::Variable::Angle;
    } else {
        usage("unknown sweep variable '" + parts[0] + "' (expected V, E or phi1)");
    }
    spec.start = parse_number(parts[1], "sweep start");
    spec.stop = parse_number(parts[2], "sweep stop");
    const double count = parse_number(parts[3], "sweep count");
    if (count != std::floor(count) || count < 2 || count > 1e8) usage("sweep count must be an integer >= 2");
    spec.count = static_cast<int>(count);
    if (!(spec.start < spec.stop)) usage("sweep needs start < stop");
    return spec;
}

std::string RunManifest::to_json() const {
    json doc;
    doc["command"] = command;
    doc["resolved_config"] = resolved_config.empty() ? json(nullptr) : json::parse(resolved_config);
    doc["outputs"] = json::array();
    for (const auto& p : outputs) doc["outputs"].push_back(p.string());
    doc["wall_time"] = wall_time_s;
    doc["warnings"] = warnings;
    doc["figure_defaults_version"] = kFigureDefaultsVersion;
    return doc.dump(2) + "\n";
}

std::vector<DeviceConfig> alpha_family(const DeviceConfig& base) {
    std::vector<DeviceConfig> family;
    for (double a : kFigureAlphas) {
        DeviceConfig cfg = base;
        cfg.alpha = a;
        cfg.fermi_energy_meV.reset();
        family.push_back(cfg);
    }
    return family;
}

std::vector<DeviceConfig> angle_family(const DeviceConfig& base) {
    std::vector<DeviceConfig> family;
    for (double phi : kFigureAngles) {
        DeviceConfig cfg = base;
        cfg.incidence_deg = phi;
        family.push_back(cfg);
    }
    return family;
}

int run(const Options& opts, std::ostream& log) {
    OutputSession session(opts.command, opts.out_dir);
    try {
        if (opts.command != "transmission" && opts.command != "iv" && opts.command != "analyze" &&
            opts.command != "figures") {
            usage("unknown command '" + opts.command + "'");
        }
        std::error_code ec;
        fs::create_directories(opts.out_dir, ec);
        if (ec) throw Error(Errc::Io, "cannot create output directory " + opts.out_dir.string());

        if (opts.command == "transmission") cmd_transmission(opts, session);
        else if (opts.command == "iv") cmd_iv(opts, session);
        else if (opts.command == "analyze") cmd_analyze(opts, session);
        else cmd_figures(opts, session);

        session.finish();
        return kExitOk;
    } catch (const Error& e) {
        session.abandon();
        log << "graphene-ndr: error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return e.is_config_error() ? kExitConfig : kExitRuntime;
    } catch (const std::exception& e) {
        session.abandon();
        log << "graphene-ndr: error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace graphene_ndr::cli
