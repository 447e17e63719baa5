// sweep.hpp - parameter sweeps over (γ/ω, δ/ω, τ) written as flat datasets.
#pragma once

#include "ptqs/linalg.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ptqs::sweep {

enum class Quantity {
    Population,
    PostselectRates,
    PopulationShift,
    Susceptibility,
    QfiSingle,
    QfiWeighted,
    SensitivityBound,
    Resources,
    LiouvillianSpectrum,
};

enum class SchemeName { Pt, Dilation, Lindblad };

enum class Format { Csv, Json };

std::string_view to_string(Quantity q);
std::string_view to_string(SchemeName s);
std::string_view to_string(Format f);
Quantity parse_quantity(std::string_view s);
SchemeName parse_scheme(std::string_view s);
Format parse_format(std::string_view s);

struct Probe {
    enum class Kind { PlusY, MinusY, Custom };
    Kind kind = Kind::PlusY;
    double theta = 0.0;
    double phi = 0.0;

    Vector2 vector() const;
    /// Label written to the probe column.
    std::string label() const;
};

struct SweepConfig {
    std::vector<Quantity> quantities{Quantity::Population};
    std::vector<SchemeName> schemes{SchemeName::Pt};
    double omega = 1.0;
    std::vector<double> gamma_list{0.0};
    std::vector<double> delta_list{0.0};
    double tau_max = 4.0 * 3.14159265358979323846;
    int tau_steps = 129;
    Probe probe;
    int N = 1;
    /// Finite-difference step relative to ω.
    double fd_h = 1e-6;
    std::string output_path = "sweep.csv";
    Format format = Format::Csv;
    /// Set by figure_preset; copied to the metadata sidecar.
    std::string preset;
    std::string notes;
};

/// Reads a flat JSON object. Unknown keys and bad values throw ConfigError
/// naming the field.
SweepConfig parse_config(const nlohmann::json& j, SweepConfig base = {});
SweepConfig load_config(const std::string& path);
nlohmann::json to_json(const SweepConfig& c);

/// Throws ConfigError naming the first offending field.
void validate(const SweepConfig& c);

/// fig2 .. fig7. Throws ConfigError for any other name.
SweepConfig figure_preset(std::string_view name);

/// τ_k = tau_max·k/(tau_steps − 1).
std::vector<double> tau_grid(const SweepConfig& c);

/// One observation. NaN prints as "undefined", ±∞ as "inf"/"-inf".
struct RecordRow {
    double tau = 0.0;
    double t = 0.0;
    double gamma_ratio = 0.0;
    double delta_ratio = 0.0;
    std::string quantity;
    double value = 0.0;
    std::string scheme;
    std::string probe;
};

/// Evaluates every grid point on `threads` workers (0 = hardware
/// concurrency) and returns rows sorted by (γ, δ, τ, quantity, scheme).
std::vector<RecordRow> evaluate(const SweepConfig& c, unsigned threads = 0);

/// Shortest round-trip decimal; "undefined" for NaN and "inf" for +∞.
std::string format_number(double v);

std::string to_csv(const std::vector<RecordRow>& rows);
std::string to_json_text(const std::vector<RecordRow>& rows);

struct Summary {
    std::size_t rows = 0;
    std::size_t undefined = 0;
    double min = 0.0;
    double max = 0.0;
};

Summary summarize(const std::vector<RecordRow>& rows);

/// Evaluates, writes the dataset plus `<output>.meta.json`, prints one summary
/// line to `out`. Throws IoError when a file cannot be written.
Summary run(const SweepConfig& c, unsigned threads, std::ostream& out);

}  // namespace ptqs::sweep
