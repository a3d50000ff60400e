#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include "hypervis/closedform.hpp"
#include "hypervis/errors.hpp"

namespace hypervis::harness {

enum class Quantity {
    Visvol,
    VisvolTruncated,
    CdfBoolean,
    CdfTessellation,
    IntersectionDensity,
    ZeroCell,
    FormulaCheck,
};

inline constexpr std::pair<Quantity, std::string_view> kQuantityNames[] = {
    {Quantity::Visvol, "visvol"},
    {Quantity::VisvolTruncated, "visvol_truncated"},
    {Quantity::CdfBoolean, "cdf_boolean"},
    {Quantity::CdfTessellation, "cdf_tessellation"},
    {Quantity::IntersectionDensity, "intersection_density"},
    {Quantity::ZeroCell, "zero_cell"},
    {Quantity::FormulaCheck, "formula_check"},
};

inline std::string_view quantity_name(Quantity q) {
    for (const auto& [k, name] : kQuantityNames) {
        if (k == q) {
            return name;
        }
    }
    return "unknown";
}

inline Quantity parse_quantity(std::string_view s) {
    for (const auto& [k, name] : kQuantityNames) {
        if (name == s) {
            return k;
        }
    }
    throw UsageError("unknown quantity '" + std::string(s) + "'");
}

namespace detail {

inline double parse_double(std::string_view s, const char* what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw UsageError(std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
    }
    return v;
}

} // namespace detail

/// "fixed:R" or "uniform:A,B".
inline GrainLaw parse_grain(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw UsageError("grain must be fixed:R or uniform:A,B, got '" + std::string(text) + "'");
    }
    const auto kind = text.substr(0, colon);
    const auto args = text.substr(colon + 1);
    try {
        if (kind == "fixed") {
            return GrainLaw::fixed(detail::parse_double(args, "grain radius"));
        }
        if (kind == "uniform") {
            const auto comma = args.find(',');
            if (comma == std::string_view::npos) {
                throw UsageError("uniform grain needs two radii A,B");
            }
            return GrainLaw::uniform(detail::parse_double(args.substr(0, comma), "lower radius"),
                                     detail::parse_double(args.substr(comma + 1), "upper radius"));
        }
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown grain kind '" + std::string(kind) + "'");
}

struct ExperimentConfig {
    Quantity quantity = Quantity::Visvol;
    int d = 2;
    double gamma = 1.0;
    std::optional<GrainLaw> law;
    std::size_t n_reps = 100;
    std::size_t n_rays = 200;
    double cutoff = 12.0;
    std::optional<double> truncate_at;
    std::optional<double> r_win;
    std::uint64_t seed = 42;
    unsigned threads = 1;

    void validate() const {
        if (quantity == Quantity::FormulaCheck) {
            return;
        }
        if (d < 2 || d > 5) {
            throw UsageError("dimension must be between 2 and 5");
        }
        if (!(gamma > 0.0)) {
            throw UsageError("gamma must be positive");
        }
        if (n_reps < 1 || n_rays < 1) {
            throw UsageError("reps and rays must be at least 1");
        }
        if (!(cutoff > 0.0)) {
            throw UsageError("cutoff must be positive");
        }
        const bool needs_law = quantity == Quantity::Visvol || quantity == Quantity::VisvolTruncated ||
                               quantity == Quantity::CdfBoolean || quantity == Quantity::IntersectionDensity;
        if (needs_law && !law) {
            throw UsageError(std::string(quantity_name(quantity)) + " needs a grain law (--grain)");
        }
        if (quantity == Quantity::VisvolTruncated && !truncate_at) {
            throw UsageError("visvol_truncated needs a truncation radius (--truncate)");
        }
        if (truncate_at && (!(*truncate_at > 0.0) || *truncate_at > cutoff)) {
            throw UsageError("truncation radius must lie in (0, cutoff]");
        }
        if (quantity == Quantity::IntersectionDensity) {
            if (d != 2) {
                throw UsageError("intersection_density is implemented for d = 2 only");
            }
            if (!r_win || !(*r_win > 0.0)) {
                throw UsageError("intersection_density needs a positive window radius (--rwin)");
            }
        }
    }
};

/// Calls f(std::integral_constant<int, D>{}) for the runtime dimension d.
template <class F>
decltype(auto) dispatch_dim(int d, F&& f) {
    switch (d) {
    case 2: return f(std::integral_constant<int, 2>{});
    case 3: return f(std::integral_constant<int, 3>{});
    case 4: return f(std::integral_constant<int, 4>{});
    case 5: return f(std::integral_constant<int, 5>{});
    default: throw UsageError("dimension must be between 2 and 5, got " + std::to_string(d));
    }
}

} // namespace hypervis::harness
