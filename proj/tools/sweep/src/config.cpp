#include "ptqs/errors.hpp"
#include "ptqs/state.hpp"
#include "ptqs/sweep.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <utility>

namespace ptqs::sweep {

namespace {

constexpr double pi = 3.14159265358979323846;

constexpr std::array<std::pair<Quantity, std::string_view>, 9> quantity_names{{
    {Quantity::Population, "population"},
    {Quantity::PostselectRates, "postselect_rates"},
    {Quantity::PopulationShift, "population_shift"},
    {Quantity::Susceptibility, "susceptibility"},
    {Quantity::QfiSingle, "qfi_single"},
    {Quantity::QfiWeighted, "qfi_weighted"},
    {Quantity::SensitivityBound, "sensitivity_bound"},
    {Quantity::Resources, "resources"},
    {Quantity::LiouvillianSpectrum, "liouvillian_spectrum"},
}};

constexpr std::array<std::pair<SchemeName, std::string_view>, 3> scheme_names{{
    {SchemeName::Pt, "pt"},
    {SchemeName::Dilation, "dilation"},
    {SchemeName::Lindblad, "lindblad"},
}};

[[noreturn]] void config_error(std::string_view field, std::string_view what) {
    throw Error(ErrorCode::ConfigError, std::string(field) + ": " + std::string(what));
}

// Which (quantity, scheme) pairs have a meaning.
bool supported(Quantity q, SchemeName s) {
    switch (q) {
        case Quantity::Population:
        case Quantity::PopulationShift:
        case Quantity::Susceptibility:
        case Quantity::QfiSingle:
        case Quantity::SensitivityBound:
            return true;
        case Quantity::PostselectRates:
        case Quantity::QfiWeighted:
            return s != SchemeName::Pt;
        case Quantity::Resources:
            return s == SchemeName::Dilation;
        case Quantity::LiouvillianSpectrum:
            return s == SchemeName::Lindblad;
    }
    return false;
}

template <class T>
T get(const nlohmann::json& v, std::string_view field) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        config_error(field, "wrong type");
    }
}

double get_number(const nlohmann::json& v, std::string_view field) {
    if (!v.is_number()) config_error(field, "expected a number");
    return v.get<double>();
}

std::vector<double> get_numbers(const nlohmann::json& v, std::string_view field) {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) config_error(field, "expected a number or an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(get_number(e, field));
    return out;
}

std::vector<std::string> get_strings(const nlohmann::json& v, std::string_view field) {
    if (v.is_string()) return {v.get<std::string>()};
    if (!v.is_array()) config_error(field, "expected a string or an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) config_error(field, "expected strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

int get_int(const nlohmann::json& v, std::string_view field) {
    if (!v.is_number_integer()) config_error(field, "expected an integer");
    return v.get<int>();
}

}  // namespace

std::string_view to_string(Quantity q) {
    for (const auto& [k, name] : quantity_names) {
        if (k == q) return name;
    }
    return "unknown";
}

std::string_view to_string(SchemeName s) {
    for (const auto& [k, name] : scheme_names) {
        if (k == s) return name;
    }
    return "unknown";
}

std::string_view to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

Quantity parse_quantity(std::string_view s) {
    for (const auto& [k, name] : quantity_names) {
        if (name == s) return k;
    }
    config_error("quantity", "unknown value '" + std::string(s) + "'");
}

SchemeName parse_scheme(std::string_view s) {
    for (const auto& [k, name] : scheme_names) {
        if (name == s) return k;
    }
    config_error("scheme", "unknown value '" + std::string(s) + "'");
}

Format parse_format(std::string_view s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    config_error("format", "expected csv or json");
}

Vector2 Probe::vector() const {
    switch (kind) {
        case Kind::PlusY: return probe::plus_y();
        case Kind::MinusY: return probe::minus_y();
        case Kind::Custom: return probe::bloch(theta, phi);
    }
    return probe::plus_y();
}

std::string Probe::label() const {
    switch (kind) {
        case Kind::PlusY: return "plus_y";
        case Kind::MinusY: return "minus_y";
        case Kind::Custom:
            return "custom(" + format_number(theta) + ";" + format_number(phi) + ")";
    }
    return "plus_y";
}

SweepConfig parse_config(const nlohmann::json& j, SweepConfig c) {
    if (!j.is_object()) config_error("config", "expected a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "quantity") {
            c.quantities.clear();
            for (const auto& s : get_strings(v, key)) c.quantities.push_back(parse_quantity(s));
        } else if (key == "scheme") {
            c.schemes.clear();
            for (const auto& s : get_strings(v, key)) c.schemes.push_back(parse_scheme(s));
        } else if (key == "omega") {
            c.omega = get_number(v, key);
        } else if (key == "gamma_list") {
            c.gamma_list = get_numbers(v, key);
        } else if (key == "delta_list") {
            c.delta_list = get_numbers(v, key);
        } else if (key == "tau_max") {
            c.tau_max = get_number(v, key);
        } else if (key == "tau_steps") {
            c.tau_steps = get_int(v, key);
        } else if (key == "probe") {
            const auto s = get<std::string>(v, key);
            if (s == "plus_y") {
                c.probe.kind = Probe::Kind::PlusY;
            } else if (s == "minus_y") {
                c.probe.kind = Probe::Kind::MinusY;
            } else if (s == "custom") {
                c.probe.kind = Probe::Kind::Custom;
            } else {
                config_error(key, "expected plus_y, minus_y or custom");
            }
        } else if (key == "probe_theta") {
            c.probe.theta = get_number(v, key);
        } else if (key == "probe_phi") {
            c.probe.phi = get_number(v, key);
        } else if (key == "N") {
            c.N = get_int(v, key);
        } else if (key == "fd_h") {
            c.fd_h = get_number(v, key);
        } else if (key == "output_path") {
            c.output_path = get<std::string>(v, key);
        } else if (key == "format") {
            c.format = parse_format(get<std::string>(v, key));
        } else {
            config_error(key, "unknown key");
        }
    }
    return c;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, std::string("config: ") + e.what());
    }
    return parse_config(j);
}

nlohmann::json to_json(const SweepConfig& c) {
    nlohmann::json j;
    auto& q = j["quantity"] = nlohmann::json::array();
    for (auto v : c.quantities) q.push_back(std::string(to_string(v)));
    auto& s = j["scheme"] = nlohmann::json::array();
    for (auto v : c.schemes) s.push_back(std::string(to_string(v)));
    j["omega"] = c.omega;
    j["gamma_list"] = c.gamma_list;
    j["delta_list"] = c.delta_list;
    j["tau_max"] = c.tau_max;
    j["tau_steps"] = c.tau_steps;
    switch (c.probe.kind) {
        case Probe::Kind::PlusY: j["probe"] = "plus_y"; break;
        case Probe::Kind::MinusY: j["probe"] = "minus_y"; break;
        case Probe::Kind::Custom:
            j["probe"] = "custom";
            j["probe_theta"] = c.probe.theta;
            j["probe_phi"] = c.probe.phi;
            break;
    }
    j["N"] = c.N;
    j["fd_h"] = c.fd_h;
    j["output_path"] = c.output_path;
    j["format"] = std::string(to_string(c.format));
    return j;
}

void validate(const SweepConfig& c) {
    if (c.quantities.empty()) config_error("quantity", "at least one quantity is required");
    if (c.schemes.empty()) config_error("scheme", "at least one scheme is required");
    for (auto q : c.quantities) {
        for (auto s : c.schemes) {
            if (!supported(q, s)) {
                config_error("scheme", std::string(to_string(q)) + " is not defined for scheme " +
                                           std::string(to_string(s)));
            }
        }
    }
    if (!(std::isfinite(c.omega) && c.omega > 0.0)) config_error("omega", "must be positive");
    if (c.gamma_list.empty()) config_error("gamma_list", "must not be empty");
    for (double g : c.gamma_list) {
        if (!(g >= 0.0 && g <= 1.0)) config_error("gamma_list", "ratios must lie in [0, 1]");
    }
    if (c.delta_list.empty()) config_error("delta_list", "must not be empty");
    for (double d : c.delta_list) {
        if (!(d >= 0.0 && d <= 0.1)) config_error("delta_list", "ratios must lie in [0, 0.1]");
    }
    if (!(std::isfinite(c.tau_max) && c.tau_max >= 0.0)) {
        config_error("tau_max", "must be finite and non-negative");
    }
    if (c.tau_steps < 2) config_error("tau_steps", "must be at least 2");
    if (c.N < 1) config_error("N", "must be at least 1");
    if (!(c.fd_h > 0.0 && c.fd_h <= 1e-3)) config_error("fd_h", "must lie in (0, 1e-3]");
    if (c.probe.kind == Probe::Kind::Custom &&
        !(std::isfinite(c.probe.theta) && std::isfinite(c.probe.phi))) {
        config_error("probe", "custom angles must be finite");
    }
    if (c.output_path.empty()) config_error("output_path", "must not be empty");
}

SweepConfig figure_preset(std::string_view name) {
    SweepConfig c;
    c.preset = std::string(name);
    c.tau_max = 4.0 * pi;
    c.tau_steps = 129;
    c.N = 1;
    c.probe = {};
    c.output_path = std::string(name) + ".csv";
    const std::vector<double> dynamics{0.0, 0.5, 0.9, 1.0 - 1e-5};
    const std::vector<double> resources{0.0, 0.3, 0.6, 0.9, 1.0 - 1e-6};
    c.notes = "gamma ratios approximate the figure legends; near-EP curves use 1-1e-5 "
              "(dynamics) and 1-1e-6 (resources)";
    if (name == "fig2") {
        c.quantities = {Quantity::Population, Quantity::PostselectRates};
        c.schemes = {SchemeName::Dilation};
        c.gamma_list = dynamics;
    } else if (name == "fig3") {
        c.quantities = {Quantity::Population, Quantity::PostselectRates};
        c.schemes = {SchemeName::Lindblad};
        c.gamma_list = dynamics;
    } else if (name == "fig4") {
        c.quantities = {Quantity::PopulationShift};
        c.schemes = {SchemeName::Pt};
        c.gamma_list = dynamics;
        c.delta_list = {0.001, 0.005};
    } else if (name == "fig5") {
        c.quantities = {Quantity::Susceptibility};
        c.schemes = {SchemeName::Pt, SchemeName::Dilation, SchemeName::Lindblad};
        c.gamma_list = dynamics;
        c.delta_list = {0.0, 0.001, 0.005};
    } else if (name == "fig6") {
        c.quantities = {Quantity::QfiSingle, Quantity::QfiWeighted, Quantity::SensitivityBound};
        c.schemes = {SchemeName::Lindblad, SchemeName::Dilation};
        c.gamma_list = dynamics;
    } else if (name == "fig7") {
        c.quantities = {Quantity::Resources, Quantity::QfiWeighted, Quantity::SensitivityBound};
        c.schemes = {SchemeName::Dilation};
        c.gamma_list = resources;
    } else {
        config_error("figure", "unknown preset '" + std::string(name) + "'");
    }
    return c;
}

std::vector<double> tau_grid(const SweepConfig& c) {
    std::vector<double> out(static_cast<std::size_t>(c.tau_steps));
    const double last = static_cast<double>(c.tau_steps - 1);
    for (int k = 0; k < c.tau_steps; ++k) out[k] = c.tau_max * static_cast<double>(k) / last;
    return out;
}

}  // namespace ptqs::sweep
