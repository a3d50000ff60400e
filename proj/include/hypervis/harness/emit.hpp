#pragma once

// Flat JSON / CSV emission with a stable field order. Reals are rounded to
// 12 significant digits so identical runs give identical bytes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "hypervis/errors.hpp"
#include "hypervis/harness/run.hpp"
#include "hypervis/record.hpp"
#include "hypervis/stats.hpp"

namespace hypervis::harness {

using Json = nlohmann::ordered_json;

inline double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace detail {

inline Json real_or_null(const std::optional<double>& x) {
    if (x && std::isfinite(*x)) {
        return round12(*x);
    }
    return nullptr;
}

} // namespace detail

/// runtime_ms is the only field that varies between identical runs.
inline Json to_json(const EstimateRecord& r) {
    Json j;
    j["quantity"] = r.quantity;
    j["dim"] = r.dim;
    j["gamma"] = round12(r.gamma);
    j["grain_kind"] = r.grain_kind;
    j["grain_params"] = r.grain_params;
    j["estimate"] = round12(r.estimate);
    j["stderr"] = round12(r.std_error);
    j["n_reps"] = r.n_reps;
    j["n_rays"] = r.n_rays;
    j["censored_fraction"] = round12(r.censored_fraction);
    j["closed_form"] = detail::real_or_null(r.closed_form);
    j["z_score"] = detail::real_or_null(r.z_score);
    j["seed"] = r.seed;
    j["runtime_ms"] = round12(r.runtime_ms);
    return j;
}

inline Json to_json(const KsResult& r) {
    Json j;
    j["statistic"] = round12(r.statistic);
    j["n"] = r.n;
    j["critical_1pct"] = round12(r.critical_1pct);
    j["pass"] = r.pass;
    return j;
}

inline Json to_json(const FormulaCheckResult& r) {
    Json j;
    j["max_residual"] = round12(r.max_residual);
    j["pass"] = r.pass;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["name"] = c.name;
        e["residual"] = round12(c.residual);
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

inline Json to_json(const RunResult& r) {
    return std::visit([](const auto& x) { return to_json(x); }, r);
}

namespace detail {

inline std::string csv_field(const Json& v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (const char c : s) {
            q += c;
            if (c == '"') {
                q += '"';
            }
        }
        return q + "\"";
    }
    return v.dump();
}

} // namespace detail

/// Header line plus one row; only flat objects are representable.
inline std::string to_csv(const Json& flat) {
    std::string header, row;
    bool first = true;
    for (const auto& [key, value] : flat.items()) {
        if (value.is_structured()) {
            continue;
        }
        if (!first) {
            header += ',';
            row += ',';
        }
        first = false;
        header += key;
        row += detail::csv_field(value);
    }
    return header + "\n" + row + "\n";
}

enum class Format { Json, Csv };

inline Format parse_format(const std::string& s) {
    if (s == "json") {
        return Format::Json;
    }
    if (s == "csv") {
        return Format::Csv;
    }
    throw UsageError("format must be json or csv, got '" + s + "'");
}

inline std::string render_text(const Json& j, Format f) {
    return f == Format::Json ? j.dump(2) + "\n" : to_csv(j);
}

inline void emit(const Json& j, Format f, std::ostream& out) { out << render_text(j, f); }

inline void emit(const Json& j, Format f, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw FileError("cannot open '" + path + "' for writing");
    }
    emit(j, f, out);
    if (!out) {
        throw FileError("write to '" + path + "' failed");
    }
}

} // namespace hypervis::harness
