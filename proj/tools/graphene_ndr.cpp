// graphene-ndr: transmission spectra, Landauer I-V curves and NDR metrics for
// a single biased graphene barrier.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "graphene_ndr/commands.hpp"

namespace {

unsigned thread_cap_from_env() {
    const char* raw = std::getenv("GRAPHENE_NDR_THREADS");
    if (!raw || !*raw) return 0;
    try {
        const long n = std::stol(raw);
        return n < 0 ? 1u : static_cast<unsigned>(n);  // 0 = auto
    } catch (const std::exception&) {
        std::cerr << "graphene-ndr: ignoring unparsable GRAPHENE_NDR_THREADS='" << raw << "'\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    namespace cli = graphene_ndr::cli;

    CLI::App app{"Ballistic transport through a biased graphene barrier"};
    cli::Options opts;
    std::string config, out = ".", sweep, iv;

    app.add_option("command", opts.command, "transmission | iv | analyze | figures")
        ->required()
        ->check(CLI::IsMember({"transmission", "iv", "analyze", "figures"}));
    app.add_option("--config", config, "JSON device configuration");
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--sweep", sweep, "transmission sweep <V|E|phi1>:<start>:<stop>:<count>");
    app.add_option("--bias", opts.bias_mV, "bias in mV for E and phi1 transmission sweeps")->capture_default_str();
    app.add_option("--iv", iv, "I-V table to analyze (default: <out>/iv.csv)");
    app.add_flag("--svg", opts.svg, "also write SVG plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitConfig;
    }

    if (!config.empty()) opts.config = config;
    if (!sweep.empty()) opts.sweep = sweep;
    if (!iv.empty()) opts.iv_csv = iv;
    opts.out_dir = out;
    opts.threads = thread_cap_from_env();

    return cli::run(opts, std::cerr);
}
