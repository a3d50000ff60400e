#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hypervis/stats.hpp"

namespace hypervis {

/// Monte Carlo estimate together with the matching closed-form value.
struct EstimateRecord {
    std::string quantity;
    int dim = 0;
    double gamma = 0.0;
    std::string grain_kind = "none";
    std::string grain_params;
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n_reps = 0;
    std::size_t n_rays = 0;
    double censored_fraction = 0.0;
    std::optional<double> closed_form;
    std::optional<double> z_score;
    std::uint64_t seed = 0;
    double runtime_ms = 0.0;

    /// Fills estimate, std_error and z_score from replication statistics.
    void set_from(const RunningStats& reps) {
        estimate = reps.mean();
        std_error = reps.stderr_of_mean();
        n_reps = reps.count();
        update_z();
    }

    void update_z() {
        if (closed_form && std_error > 0.0) {
            z_score = (estimate - *closed_form) / std_error;
        } else {
            z_score.reset();
        }
    }
};

} // namespace hypervis
