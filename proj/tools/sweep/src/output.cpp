#include "ptqs/errors.hpp"
#include "ptqs/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace ptqs::sweep {

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

nlohmann::ordered_json number_or_sentinel(double v) {
    if (std::isfinite(v)) return v == 0.0 ? 0.0 : v;
    return format_number(v);
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "undefined";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string to_csv(const std::vector<RecordRow>& rows) {
    std::string out = "tau,t,gamma_ratio,delta_ratio,quantity,value,scheme,probe\n";
    for (const auto& r : rows) {
        out += format_number(r.tau) + ',' + format_number(r.t) + ',' +
               format_number(r.gamma_ratio) + ',' + format_number(r.delta_ratio) + ',' +
               r.quantity + ',' + format_number(r.value) + ',' + r.scheme + ',' + r.probe + '\n';
    }
    return out;
}

std::string to_json_text(const std::vector<RecordRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["tau"] = number_or_sentinel(r.tau);
        o["t"] = number_or_sentinel(r.t);
        o["gamma_ratio"] = number_or_sentinel(r.gamma_ratio);
        o["delta_ratio"] = number_or_sentinel(r.delta_ratio);
        o["quantity"] = r.quantity;
        o["value"] = number_or_sentinel(r.value);
        o["scheme"] = r.scheme;
        o["probe"] = r.probe;
        arr.push_back(std::move(o));
    }
    return arr.dump(1) + "\n";
}

Summary summarize(const std::vector<RecordRow>& rows) {
    Summary s;
    s.rows = rows.size();
    bool seen = false;
    for (const auto& r : rows) {
        if (!std::isfinite(r.value)) {
            s.undefined += std::isnan(r.value) ? 1 : 0;
            continue;
        }
        s.min = seen ? std::min(s.min, r.value) : r.value;
        s.max = seen ? std::max(s.max, r.value) : r.value;
        seen = true;
    }
    return s;
}

Summary run(const SweepConfig& c, unsigned threads, std::ostream& out) {
    const auto rows = evaluate(c, threads);
    write_file(c.output_path, c.format == Format::Csv ? to_csv(rows) : to_json_text(rows));

    nlohmann::ordered_json meta;
    meta["generator"] = "ptqs sweep";
    meta["preset"] = c.preset;
    meta["notes"] = c.notes;
    meta["tau_grid"] = "tau_k = tau_max * k / (tau_steps - 1)";
    meta["derivative"] = "d/domega at fixed physical time t = tau / kappa(omega)";
    meta["config"] = to_json(c);
    meta["rows"] = rows.size();
    write_file(c.output_path + ".meta.json", meta.dump(2) + "\n");

    const Summary s = summarize(rows);
    out << "rows=" << s.rows << " undefined=" << s.undefined << " min=" << format_number(s.min)
        << " max=" << format_number(s.max) << " output=" << c.output_path << '\n';
    return s;
}

}  // namespace ptqs::sweep
