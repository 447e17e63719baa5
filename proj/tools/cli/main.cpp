// ptqs - sweep driver.
//
//   ptqs sweep --config run.json [--threads K] [--output data.csv]
//   ptqs figure fig7 [--output fig7.csv]
#include "ptqs/errors.hpp"
#include "ptqs/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

using ptqs::sweep::SweepConfig;

struct Overrides {
    std::vector<std::string> quantity;
    std::vector<std::string> scheme;
    std::optional<double> omega;
    std::vector<double> gamma_list;
    std::vector<double> delta_list;
    std::optional<double> tau_max;
    std::optional<int> tau_steps;
    std::optional<std::string> probe;
    std::optional<double> probe_theta;
    std::optional<double> probe_phi;
    std::optional<int> n;
    std::optional<double> fd_h;
    std::optional<std::string> output;
    std::optional<std::string> format;
};

void add_overrides(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--quantity", o.quantity, "quantity (repeatable)");
    cmd.add_option("--scheme", o.scheme, "pt, dilation or lindblad (repeatable)");
    cmd.add_option("--omega", o.omega, "coupling omega in rad/s");
    cmd.add_option("--gamma", o.gamma_list, "gamma/omega ratios")->delimiter(',');
    cmd.add_option("--delta", o.delta_list, "delta/omega ratios")->delimiter(',');
    cmd.add_option("--tau-max", o.tau_max, "largest scaled time");
    cmd.add_option("--tau-steps", o.tau_steps, "number of tau samples");
    cmd.add_option("--probe", o.probe, "plus_y, minus_y or custom");
    cmd.add_option("--probe-theta", o.probe_theta, "Bloch polar angle of a custom probe");
    cmd.add_option("--probe-phi", o.probe_phi, "Bloch azimuth of a custom probe");
    cmd.add_option("--N", o.n, "repetitions in the Cramer-Rao bound");
    cmd.add_option("--fd-h", o.fd_h, "finite-difference step relative to omega");
    cmd.add_option("--output", o.output, "dataset path");
    cmd.add_option("--format", o.format, "csv or json");
}

SweepConfig apply(SweepConfig c, const Overrides& o) {
    nlohmann::json j = nlohmann::json::object();
    if (!o.quantity.empty()) j["quantity"] = o.quantity;
    if (!o.scheme.empty()) j["scheme"] = o.scheme;
    if (o.omega) j["omega"] = *o.omega;
    if (!o.gamma_list.empty()) j["gamma_list"] = o.gamma_list;
    if (!o.delta_list.empty()) j["delta_list"] = o.delta_list;
    if (o.tau_max) j["tau_max"] = *o.tau_max;
    if (o.tau_steps) j["tau_steps"] = *o.tau_steps;
    if (o.probe) j["probe"] = *o.probe;
    if (o.probe_theta) j["probe_theta"] = *o.probe_theta;
    if (o.probe_phi) j["probe_phi"] = *o.probe_phi;
    if (o.n) j["N"] = *o.n;
    if (o.fd_h) j["fd_h"] = *o.fd_h;
    if (o.output) j["output_path"] = *o.output;
    if (o.format) j["format"] = *o.format;
    return ptqs::sweep::parse_config(j, std::move(c));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PT-symmetric quantum sensing sweeps"};
    app.require_subcommand(1);
    unsigned threads = 0;

    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON config");
    std::string config_path;
    Overrides sweep_overrides;
    sweep->add_option("--config", config_path, "flat JSON config")->check(CLI::ExistingFile);
    sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
    add_overrides(*sweep, sweep_overrides);

    auto* figure = app.add_subcommand("figure", "run a figure preset");
    std::string preset;
    Overrides figure_overrides;
    figure->add_option("name", preset, "fig2 .. fig7")->required();
    figure->add_option("--threads", threads, "worker threads (0 = all cores)");
    add_overrides(*figure, figure_overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        SweepConfig c;
        if (*sweep) {
            if (!config_path.empty()) c = ptqs::sweep::load_config(config_path);
            c = apply(std::move(c), sweep_overrides);
        } else {
            c = apply(ptqs::sweep::figure_preset(preset), figure_overrides);
        }
        ptqs::sweep::run(c, threads, std::cout);
    } catch (const ptqs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ptqs::ErrorCode::ConfigError: return 2;
            case ptqs::ErrorCode::IoError: return 3;
            default: return 1;
        }
    }
    return 0;
}
