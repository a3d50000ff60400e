#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "hypervis/hypervis.hpp"

using namespace hypervis;
using namespace hypervis::harness;

namespace {

struct FormulaArgs {
    std::string name;
    int dim = 2;
    double gamma = 1.0;
    std::string grain;
    double radius = 1.0;
    double r = 1.0;
    int j = 0;
    int k = 1;
    double a = 2.0;
    double delta = 1e-3;
};

Json finite_or_inf(const FiniteOrInfinite& v) {
    Json j;
    j["finite"] = v.is_finite();
    j["value"] = v.is_finite() ? Json(round12(v.value())) : Json(nullptr);
    return j;
}

GrainLaw require_grain(const std::string& g) {
    if (g.empty()) {
        throw UsageError("this formula needs --grain fixed:R or uniform:A,B");
    }
    return parse_grain(g);
}

Json evaluate_formula(const FormulaArgs& f) {
    Json out;
    out["formula"] = f.name;
    out["dim"] = f.dim;
    const int d = f.dim;
    if (d < 2) {
        throw UsageError("dimension must be at least 2");
    }
    auto put = [&](double v) { out["value"] = round12(v); };
    const auto& n = f.name;
    if (n == "kappa") {
        put(kappa(d));
    } else if (n == "omega") {
        put(omega(d));
    } else if (n == "ell") {
        out["j"] = f.j;
        out["r"] = f.r;
        put(ell(d, f.j, f.r));
    } else if (n == "ball_volume") {
        out["radius"] = f.radius;
        put(ball_volume(d, f.radius));
    } else if (n == "ball_surface") {
        out["radius"] = f.radius;
        put(ball_surface(d, f.radius));
    } else if (n == "grain_moments") {
        const auto m = grain_moments(d, require_grain(f.grain));
        out["grain"] = f.grain;
        out["v_dm1"] = round12(m.v_dm1);
        out["v_dm1_star"] = round12(m.v_dm1_star);
        out["mean_volume"] = round12(m.mean_volume);
    } else if (n == "sinh_exp_integral") {
        out["a"] = f.a;
        out.update(finite_or_inf(sinh_exp_integral(d, f.a)));
    } else if (n == "mean_visible_volume") {
        out["gamma"] = f.gamma;
        out["grain"] = f.grain;
        out.update(finite_or_inf(mean_visible_volume(d, f.gamma, require_grain(f.grain))));
    } else if (n == "truncated_visible_volume") {
        out["gamma"] = f.gamma;
        out["grain"] = f.grain;
        out["radius"] = f.radius;
        put(truncated_visible_volume(d, f.gamma, require_grain(f.grain), f.radius));
    } else if (n == "truncation_asymptote") {
        const auto as = truncation_asymptote(d, f.gamma, require_grain(f.grain), f.radius);
        out["gamma"] = f.gamma;
        out["grain"] = f.grain;
        out["radius"] = f.radius;
        out["regime"] = regime_name(as.regime);
        put(as.comparator);
    } else if (n == "critical_scaling") {
        out["delta"] = f.delta;
        put(critical_scaling(d, f.delta));
    } else if (n == "intersection_density") {
        out["gamma"] = f.gamma;
        out["grain"] = f.grain;
        put(intersection_density(d, f.gamma, require_grain(f.grain)));
    } else if (n == "visibility_threshold") {
        out["radius"] = f.radius;
        put(visibility_threshold(d, f.radius));
    } else if (n == "hyperplane_rate") {
        out["gamma"] = f.gamma;
        put(hyperplane_rate(d, f.gamma));
    } else if (n == "zero_cell_mean_volume") {
        out["gamma"] = f.gamma;
        out.update(finite_or_inf(zero_cell_mean_volume(d, f.gamma)));
    } else if (n == "verify_ell_identity") {
        out["k"] = f.k;
        out["j"] = f.j;
        out["r"] = f.r;
        out["residual"] = verify_ell_identity(d, f.k, f.j, f.r);
    } else if (n == "steiner_ball_check") {
        out["radius"] = f.radius;
        out["r"] = f.r;
        out["residual"] = steiner_ball_check(d, f.radius, f.r);
        Json v = Json::array();
        for (const double x : fit_ball_intrinsic_volumes(d, f.radius)) {
            v.push_back(round12(x));
        }
        out["intrinsic_volumes"] = v;
    } else {
        throw UsageError("unknown formula '" + n + "'");
    }
    return out;
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic geometry in hyperbolic space: simulation against closed forms"};
    app.require_subcommand(1);

    auto* constants = app.add_subcommand("constants", "Print kappa_d and omega_d");
    int const_dim = 2;
    constants->add_option("--dim", const_dim, "Dimension")->check(CLI::Range(1, 64));

    FormulaArgs fa;
    auto* formula = app.add_subcommand("formula", "Evaluate a closed-form expression");
    formula->add_option("name", fa.name, "Formula name")->required();
    formula->add_option("--dim", fa.dim, "Dimension");
    formula->add_option("--gamma", fa.gamma, "Intensity");
    formula->add_option("--grain", fa.grain, "fixed:R or uniform:A,B");
    formula->add_option("--radius", fa.radius, "Ball or truncation radius");
    formula->add_option("--r", fa.r, "Parallel distance / coefficient argument");
    formula->add_option("--j", fa.j, "Index j");
    formula->add_option("--k", fa.k, "Index k");
    formula->add_option("--a", fa.a, "Exponential rate");
    formula->add_option("--delta", fa.delta, "Distance above the threshold");

    ExperimentConfig cfg;
    std::string quantity, grain, format = "json", out_path;
    std::optional<double> truncate, rwin;
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate with its closed form");
    estimate->add_option("quantity", quantity,
                         "visvol | visvol_truncated | cdf_boolean | cdf_tessellation | intersection_density | "
                         "zero_cell | formula_check")
        ->required();
    estimate->add_option("--dim", cfg.d, "Dimension (2..5)");
    estimate->add_option("--gamma", cfg.gamma, "Intensity");
    estimate->add_option("--grain", grain, "fixed:R or uniform:A,B");
    estimate->add_option("--reps", cfg.n_reps, "Independent realizations");
    estimate->add_option("--rays", cfg.n_rays, "Rays per realization");
    estimate->add_option("--cutoff", cfg.cutoff, "Ray cutoff / window radius");
    estimate->add_option("--truncate", truncate, "Truncation radius");
    estimate->add_option("--rwin", rwin, "Intersection window radius");
    estimate->add_option("--seed", cfg.seed, "Master seed");
    estimate->add_option("--threads", cfg.threads, "Worker threads");
    estimate->add_option("--format", format, "json or csv");
    estimate->add_option("--out", out_path, "Output file (stdout if absent)");

    int render_dim = 2;
    std::string model = "boolean", render_grain = "fixed:0.5", svg_path;
    double render_gamma = 1.0, window = 4.0;
    std::optional<double> view;
    std::uint64_t render_seed = 42;
    auto* render = app.add_subcommand("render", "Draw one planar realization in the Poincare disk");
    render->add_option("--dim", render_dim, "Dimension (only 2)");
    render->add_option("--model", model, "boolean or hyperplanes");
    render->add_option("--gamma", render_gamma, "Intensity");
    render->add_option("--grain", render_grain, "fixed:R or uniform:A,B");
    render->add_option("--window", window, "Observation radius of the simulated window");
    render->add_option("--view", view, "Draw only obstacles meeting B(p, view); defaults to the window");
    render->add_option("--seed", render_seed, "Seed");
    render->add_option("--out", svg_path, "SVG file")->required();

    bool fresh = false;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_flag("--fresh-seed", fresh, "Use a random seed and report without asserting");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*constants) {
            const auto c = Constants::of(const_dim);
            Json j;
            j["dim"] = c.d;
            j["kappa_d"] = round12(c.kappa_d);
            j["omega_d"] = round12(c.omega_d);
            std::cout << j.dump(2) << "\n";
        } else if (*formula) {
            std::cout << evaluate_formula(fa).dump(2) << "\n";
        } else if (*estimate) {
            cfg.quantity = parse_quantity(quantity);
            if (!grain.empty()) {
                cfg.law = parse_grain(grain);
            }
            cfg.truncate_at = truncate;
            cfg.r_win = rwin;
            const auto fmt = parse_format(format);
            const auto j = to_json(run(cfg));
            if (out_path.empty()) {
                emit(j, fmt, std::cout);
            } else {
                emit(j, fmt, out_path);
            }
        } else if (*render) {
            if (render_dim != 2) {
                throw UsageError("rendering is available for d = 2 only");
            }
            Stream rng(render_seed, 0, StreamRole::Field);
            const double v = view.value_or(window);
            if (model == "boolean") {
                render_svg(sample_boolean<2>(render_gamma, parse_grain(render_grain), window, rng), svg_path, v);
            } else if (model == "hyperplanes") {
                render_svg(sample_hyperplanes<2>(render_gamma, window, rng), svg_path, v);
            } else {
                throw UsageError("model must be boolean or hyperplanes");
            }
        } else if (*verify) {
            const std::uint64_t seed = fresh ? fresh_seed() : kAcceptanceSeed;
            if (fresh) {
                std::cout << "fresh seed " << seed << " (report only)\n";
            }
            bool all = true;
            for (const auto& c : acceptance_criteria()) {
                const auto r = run_criterion(c, seed);
                all = all && r.pass;
                std::cout << format_line(r) << std::endl;
            }
            std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
            return fresh || all ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
