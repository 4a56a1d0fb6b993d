#include "foldbend/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "foldbend/bending.hpp"
#include "foldbend/errors.hpp"
#include "foldbend/io.hpp"
#include "foldbend/material.hpp"
#include "foldbend/vel.hpp"

namespace foldbend::cli {

namespace {

using io::format_number;

// Key/value report, either aligned text or two-column CSV.
class Report {
public:
    explicit Report(bool csv) : csv_(csv) {}

    void add(std::string key, double value, std::string unit = {}) {
        rows_.push_back({std::move(key), format_number(value), std::move(unit)});
    }
    void add(std::string key, std::string value) { rows_.push_back({std::move(key), std::move(value), {}}); }

    void print(std::ostream& out) const {
        if (csv_) {
            out << "quantity,value\n";
            for (const auto& r : rows_) out << r.key << ',' << r.value << '\n';
            return;
        }
        std::size_t width = 0;
        for (const auto& r : rows_) width = std::max(width, r.key.size());
        for (const auto& r : rows_) {
            out << r.key << std::string(width + 2 - r.key.size(), ' ') << r.value;
            if (!r.unit.empty()) out << ' ' << r.unit;
            out << '\n';
        }
    }

private:
    struct Row {
        std::string key;
        std::string value;
        std::string unit;
    };
    bool csv_;
    std::vector<Row> rows_;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    return f;
}

void add_state(Report& r, const BendingState& s) {
    r.add("pressure", s.pressure_kpa, "kPa");
    r.add("theta", s.theta_deg(), "deg");
    r.add("phi", s.phi * 180.0 / std::numbers::pi, "deg");
    r.add("theta_rad", s.theta, "rad");
    r.add("phi_rad", s.phi, "rad");
    r.add("lambda", s.lambda_star);
    r.add("radius", s.radius, "mm");
    r.add("residual", s.residual, "N*mm");
}

struct Options {
    std::string input, out, material, config, data, contour, mask, format = "table";
    double stretch = 1.0, pressure = 0.0, pmin = 0.0, pmax = 0.0, step = 10.0;
    double alpha_min = 0.0, alpha_max = 3.0, epsilon = kDefaultEpsilonMm;
    int stations = kDefaultStations;
    bool optimize = false;
};

int cmd_fit_material(const Options& o, std::ostream& out) {
    const auto data = io::read_stress_strain_csv(o.input);
    const auto fit = fit_mooney_rivlin(data);
    io::write_material(o.out, fit.model);
    Report r(o.format == "csv");
    r.add("samples", static_cast<double>(fit.sample_count));
    r.add("residual_norm", fit.residual_norm, "MPa");
    r.add("condition_number", fit.condition_number);
    const auto& c = fit.model.coefficients();
    r.add("c10", c.c10, "MPa");
    r.add("c01", c.c01, "MPa");
    r.add("c11", c.c11, "MPa");
    r.add("c20", c.c20, "MPa");
    r.add("c02", c.c02, "MPa");
    r.add("d", 0.0, "1/MPa");
    for (const auto& w : fit.warnings) r.add("warning", w);
    r.print(out);
    return kSuccess;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const auto model = io::read_material(o.material);
    const auto uni = invariants_uniaxial(o.stretch);
    const auto ps = invariants_plane_strain(o.stretch);
    Report r(o.format == "csv");
    r.add("stretch", o.stretch);
    r.add("uniaxial_i1", uni.i1);
    r.add("uniaxial_i2", uni.i2);
    r.add("uniaxial_energy_density", strain_energy_density(model, uni), "MPa");
    r.add("uniaxial_nominal_stress", nominal_stress_uniaxial(model, o.stretch), "MPa");
    r.add("plane_strain_i1", ps.i1);
    r.add("plane_strain_i2", ps.i2);
    r.add("plane_strain_energy_density", strain_energy_density(model, ps), "MPa");
    r.add("plane_strain_energy_derivative", plane_strain_energy_derivative(model, o.stretch), "MPa");
    r.print(out);
    return kSuccess;
}

int cmd_solve(const Options& o, std::ostream& out) {
    const auto cfg = io::read_config(o.config);
    const auto state = solve_equilibrium(cfg, o.pressure);
    Report r(o.format == "csv");
    add_state(r, state);
    r.print(out);
    return kSuccess;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    const auto cfg = io::read_config(o.config);
    const auto pressures = sweep_pressures(o.pmin, o.pmax, o.step);
    auto file = open_output(o.out);
    io::write_sweep_header(file);
    std::size_t rows = 0;
    double prev_theta = 0.0;
    for (double p : pressures) {
        BendingState s;
        try {
            s = solve_equilibrium(cfg, p);
        } catch (const NumericError& e) {
            file.flush();
            err << "error: at " << format_number(p) << " kPa: " << e.what() << '\n'
                << "wrote " << rows << " rows to " << o.out << " (last solvable pressure "
                << (rows ? format_number(p - o.step) : std::string("none")) << " kPa)\n";
            return kNumericError;
        }
        if (rows > 0 && s.theta < prev_theta) {
            err << "error: bending angle decreased at " << format_number(p) << " kPa\n";
            return kNumericError;
        }
        prev_theta = s.theta;
        io::write_sweep_row(file, s);
        ++rows;
    }
    out << "wrote " << rows << " rows to " << o.out << '\n';
    return kSuccess;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
    const auto cfg = io::read_config(o.config);
    const auto data = io::read_angle_csv(o.data);
    const auto cal = calibrate_alpha(cfg, data, {o.alpha_min, o.alpha_max});
    Report r(o.format == "csv");
    r.add("alpha", cal.alpha);
    r.add("max_relative_error", cal.max_relative_error);
    r.add("max_relative_error_pct", 100.0 * cal.max_relative_error, "%");
    r.add("points", static_cast<double>(data.size()));
    r.add("evaluations", static_cast<double>(cal.evaluations));
    r.print(out);
    return kSuccess;
}

int cmd_shape(const Options& o, std::ostream& out) {
    const auto cfg = io::read_config(o.config);
    const auto mask = SegmentMask::parse(o.mask);
    const auto state = solve_equilibrium(cfg, o.pressure);
    const auto shape = backbone_shape(cfg, state, mask, cfg.pitch());
    auto file = open_output(o.out);
    io::write_shape_csv(file, shape);
    const auto& tip = shape.vertices.back();
    out << "mask " << mask.to_string() << ": tip (" << format_number(tip.x) << ", "
        << format_number(tip.y) << ") mm, heading " << format_number(tip.heading * 180.0 / std::numbers::pi)
        << " deg; wrote " << shape.vertices.size() << " vertices to " << o.out << '\n';
    return kSuccess;
}

int cmd_conform(const Options& o, std::ostream& out) {
    const auto cfg = io::read_config(o.config);
    const auto contour = io::read_contour_csv(o.contour);
    if (o.optimize == !o.mask.empty()) throw InputError("conform needs exactly one of --mask or --optimize");
    const auto state = solve_equilibrium(cfg, o.pressure);
    const double pitch = cfg.pitch();

    Report r(o.format == "csv");
    r.add("pressure", o.pressure, "kPa");
    r.add("theta", state.theta_deg(), "deg");
    if (o.optimize) {
        const auto best = optimize_mask(cfg, state, contour, pitch, o.epsilon, o.stations);
        r.add("mask", best.mask.to_string());
        r.add("contact_ratio", best.score.contact_ratio);
        r.add("rms_distance", best.score.rms_distance, "mm");
        r.add("masks_evaluated", static_cast<double>(best.evaluated));
    } else {
        const auto mask = SegmentMask::parse(o.mask);
        const auto shape = backbone_shape(cfg, state, mask, pitch);
        const auto score = conformity_score(shape, contour, o.epsilon, o.stations);
        r.add("mask", mask.to_string());
        r.add("contact_ratio", score.contact_ratio);
        r.add("rms_distance", score.rms_distance, "mm");
    }
    r.add("epsilon", o.epsilon, "mm");
    r.print(out);
    return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fold-based soft pneumatic actuator modeling toolkit", "foldbend"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto format_opt = [&o](CLI::App* sub) {
        sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"table", "csv"}));
    };

    auto* fit = app.add_subcommand("fit-material", "Fit Mooney-Rivlin coefficients to tensile data");
    fit->add_option("--input", o.input, "CSV with header strain,stress_mpa")->required();
    fit->add_option("--out", o.out, "Material JSON to write")->required();
    format_opt(fit);
    fit->callback([&] { action = [&] { return cmd_fit_material(o, out); }; });

    auto* eval = app.add_subcommand("eval", "Evaluate a material at one stretch");
    eval->add_option("--material", o.material, "Material JSON")->required();
    eval->add_option("--stretch", o.stretch, "Stretch ratio lambda")->required();
    format_opt(eval);
    eval->callback([&] { action = [&] { return cmd_eval(o, out); }; });

    auto* solve = app.add_subcommand("solve", "Equilibrium bending state at one pressure");
    solve->add_option("--config", o.config, "Actuator config JSON")->required();
    solve->add_option("--pressure", o.pressure, "Pressure, kPa")->required();
    format_opt(solve);
    solve->callback([&] { action = [&] { return cmd_solve(o, out); }; });

    auto* sweep = app.add_subcommand("sweep", "Bending states over a pressure range");
    sweep->add_option("--config", o.config, "Actuator config JSON")->required();
    sweep->add_option("--pmin", o.pmin, "First pressure, kPa")->required();
    sweep->add_option("--pmax", o.pmax, "Last pressure, kPa")->required();
    sweep->add_option("--step", o.step, "Pressure step, kPa")->capture_default_str();
    sweep->add_option("--out", o.out, "Sweep CSV to write")->required();
    sweep->callback([&] { action = [&] { return cmd_sweep(o, out, err); }; });

    auto* cal = app.add_subcommand("calibrate-alpha", "Fit the aspect-ratio exponent to angle data");
    cal->add_option("--config", o.config, "Actuator config JSON")->required();
    cal->add_option("--data", o.data, "CSV with header pressure_kpa,angle_deg")->required();
    cal->add_option("--alpha-min", o.alpha_min, "Lower end of the search range")->capture_default_str();
    cal->add_option("--alpha-max", o.alpha_max, "Upper end of the search range")->capture_default_str();
    format_opt(cal);
    cal->callback([&] { action = [&] { return cmd_calibrate(o, out); }; });

    auto* shape = app.add_subcommand("shape", "Backbone polyline for a constraint mask");
    shape->add_option("--config", o.config, "Actuator config JSON")->required();
    shape->add_option("--pressure", o.pressure, "Pressure, kPa")->required();
    shape->add_option("--mask", o.mask, "Fold mask, proximal first, 1 = free")->required();
    shape->add_option("--out", o.out, "Shape CSV to write")->required();
    shape->callback([&] { action = [&] { return cmd_shape(o, out); }; });

    auto* conform = app.add_subcommand("conform", "Score or optimize a mask against a contour");
    conform->add_option("--config", o.config, "Actuator config JSON")->required();
    conform->add_option("--pressure", o.pressure, "Pressure, kPa")->required();
    conform->add_option("--contour", o.contour, "CSV with header x_mm,y_mm")->required();
    auto* mask_opt = conform->add_option("--mask", o.mask, "Fold mask to score");
    auto* opt_flag = conform->add_flag("--optimize", o.optimize, "Search all masks");
    mask_opt->excludes(opt_flag);
    conform->add_option("--epsilon", o.epsilon, "Contact distance, mm")->capture_default_str();
    conform->add_option("--stations", o.stations, "Arc-length sample stations")->capture_default_str();
    format_opt(conform);
    conform->callback([&] { action = [&] { return cmd_conform(o, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        return action();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericError;
    }
}

}  // namespace foldbend::cli
