#include "foldbend/bending.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "foldbend/errors.hpp"

namespace foldbend {

namespace {

void require_pressure(double pressure_kpa) {
    if (!std::isfinite(pressure_kpa) || pressure_kpa < 0.0) {
        std::ostringstream msg;
        msg << "pressure must be finite and >= 0 kPa, got " << pressure_kpa;
        throw DomainError(msg.str());
    }
}

double air_gradient(const ActuatorConfig& c, const EquivalentConnector& e, double pressure_kpa) {
    const double p = pressure_kpa * kKpaToMpa;
    const double arm = 0.5 * (c.geometry.H1 - e.h_e);
    return p * c.area_a * arm * (e.x_e / e.h_ee);
}

double strain_gradient(const ActuatorConfig& c, const EquivalentConnector& e, double lambda) {
    return e.v_tt * plane_strain_energy_derivative(c.material, lambda);
}

}  // namespace

EquivalentConnector ActuatorConfig::connector() const {
    return equivalent_connector(geometry, depth, h_ee_override);
}

double ActuatorConfig::pitch() const {
    return segment_pitch ? *segment_pitch : 2.0 * connector().x_e;
}

void validate(const ActuatorConfig& c) {
    std::vector<std::string> bad;
    if (c.n_folds < 1) bad.emplace_back("n_folds");
    if (!std::isfinite(c.area_a) || c.area_a <= 0.0) bad.emplace_back("area_a");
    if (!std::isfinite(c.lambda_max) || c.lambda_max <= 1.0) bad.emplace_back("lambda_max");
    if (!std::isfinite(c.solver_tol) || c.solver_tol <= 0.0) bad.emplace_back("solver_tol");
    if (c.segment_pitch && !(std::isfinite(*c.segment_pitch) && *c.segment_pitch > 0.0)) {
        bad.emplace_back("segment_pitch");
    }
    if (!bad.empty()) {
        std::string msg = "invalid actuator config:";
        for (const auto& f : bad) msg += " " + f;
        throw ValidationError(msg, bad);
    }
    const auto e = c.connector();
    if (e.h_e >= c.geometry.H1) {
        std::ostringstream msg;
        msg << "equivalent height h_e = " << e.h_e << " mm leaves no pressure moment arm below H1 = "
            << c.geometry.H1 << " mm";
        throw ValidationError(msg.str(), {"alpha", "H1"});
    }
}

double BendingState::theta_deg() const { return theta * 180.0 / std::numbers::pi; }

double air_work_gradient(const ActuatorConfig& config, double pressure_kpa) {
    require_pressure(pressure_kpa);
    return air_gradient(config, config.connector(), pressure_kpa);
}

double strain_work_gradient(const ActuatorConfig& config, double lambda) {
    if (!std::isfinite(lambda) || lambda < 1.0) {
        std::ostringstream msg;
        msg << "wall stretch must be >= 1, got " << lambda;
        throw DomainError(msg.str());
    }
    return strain_gradient(config, config.connector(), lambda);
}

double residual_tolerance(const ActuatorConfig& config, double pressure_kpa) {
    return config.solver_tol * pressure_kpa * kKpaToMpa * config.area_a * config.geometry.H1;
}

BendingState make_state(const ActuatorConfig& config, double pressure_kpa, double lambda,
                        double residual) {
    const auto e = config.connector();
    BendingState s;
    s.pressure_kpa = pressure_kpa;
    s.lambda_star = lambda;
    s.phi = (e.x_e / e.h_ee) * (lambda - 1.0);
    s.theta = static_cast<double>(config.n_folds) * s.phi;
    s.residual = residual;
    s.radius = lambda > 1.0 ? e.h_ee / (lambda - 1.0) : std::numeric_limits<double>::infinity();
    return s;
}

BendingState solve_equilibrium(const ActuatorConfig& config, double pressure_kpa) {
    require_pressure(pressure_kpa);
    validate(config);
    if (pressure_kpa == 0.0) return make_state(config, 0.0, 1.0, 0.0);

    const auto e = config.connector();
    const double air = air_gradient(config, e, pressure_kpa);
    const double tol = residual_tolerance(config, pressure_kpa);
    auto residual = [&](double lambda) { return strain_gradient(config, e, lambda) - air; };

    // Offsets (lambda_max - 1) 2^-k for k = kScan..0 resolve roots down to a
    // few ulp above 1 and give the monotonicity check something to look at.
    constexpr int kScan = 52;
    const double span = config.lambda_max - 1.0;
    double lo = 1.0;
    double prev_strain = 0.0;
    double hi = 0.0;
    bool bracketed = false;
    double last = 0.0;
    for (int k = kScan; k >= 0; --k) {
        const double lambda = 1.0 + std::ldexp(span, -k);
        const double strain = strain_gradient(config, e, lambda);
        if (strain < prev_strain) {
            std::ostringstream msg;
            msg << "strain-energy gradient is not increasing in stretch: " << prev_strain << " at "
                << lo << " then " << strain << " at " << lambda << " N·mm";
            throw SolverError(msg.str());
        }
        last = strain - air;
        if (last >= 0.0) {
            hi = lambda;
            bracketed = true;
            break;
        }
        lo = lambda;
        prev_strain = strain;
    }
    if (!bracketed) {
        std::ostringstream msg;
        msg << "pressure " << pressure_kpa << " kPa saturates the actuator: gradient at lambda_max = "
            << config.lambda_max << " is " << last << " N·mm (needs >= 0)";
        throw SaturationError(msg.str(), pressure_kpa, last);
    }

    double g_lo = residual(lo);
    double g_hi = residual(hi);
    while (g_hi != 0.0) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double g_mid = residual(mid);
        if (g_mid < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    const bool take_hi = std::abs(g_hi) <= std::abs(g_lo);
    const double lambda_star = take_hi ? hi : lo;
    const double res = std::abs(take_hi ? g_hi : g_lo);
    if (res > tol) {
        std::ostringstream msg;
        msg << "bisection stalled at lambda = " << lambda_star << " with residual " << res
            << " N·mm above tolerance " << tol;
        throw SolverError(msg.str());
    }
    return make_state(config, pressure_kpa, lambda_star, res);
}

std::vector<double> sweep_pressures(double p_min, double p_max, double step) {
    std::vector<std::string> bad;
    if (!std::isfinite(p_min) || p_min < 0.0) bad.emplace_back("p_min");
    if (!std::isfinite(p_max) || p_max < p_min) bad.emplace_back("p_max");
    if (!std::isfinite(step) || step <= 0.0) bad.emplace_back("step");
    if (!bad.empty()) {
        std::string msg = "invalid pressure sweep:";
        for (const auto& f : bad) msg += " " + f;
        throw ValidationError(msg, bad);
    }
    const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(p_min + static_cast<double>(k) * step);
    return out;
}

std::vector<BendingState> pressure_sweep(const ActuatorConfig& config, double p_min, double p_max,
                                         double step) {
    const auto pressures = sweep_pressures(p_min, p_max, step);
    std::vector<BendingState> states;
    states.reserve(pressures.size());
    for (double p : pressures) {
        try {
            states.push_back(solve_equilibrium(config, p));
        } catch (const SaturationError& err) {
            throw SaturationError("at " + std::to_string(p) + " kPa: " + err.what(), p,
                                  err.gradient_at_lambda_max());
        } catch (const SolverError& err) {
            throw SolverError("at " + std::to_string(p) + " kPa: " + err.what());
        }
        if (states.size() > 1 && states.back().theta < states[states.size() - 2].theta) {
            throw SolverError("bending angle decreased with pressure at " + std::to_string(p) + " kPa");
        }
    }
    return states;
}

double max_relative_angle_error(const ActuatorConfig& config, std::span<const AngleSample> data) {
    double worst = 0.0;
    for (const auto& d : data) {
        const double predicted = solve_equilibrium(config, d.pressure_kpa).theta_deg();
        const double err = std::abs(predicted - d.angle_deg);
        if (err == 0.0) continue;
        worst = std::max(worst, err / std::max(std::abs(d.angle_deg), 1e-9));
    }
    return worst;
}

AlphaCalibration calibrate_alpha(const ActuatorConfig& config, std::span<const AngleSample> data,
                                 AlphaRange range) {
    if (data.size() < 3) {
        throw ValidationError("alpha calibration needs at least 3 (pressure, angle) points", {"data"});
    }
    for (const auto& d : data) {
        require_pressure(d.pressure_kpa);
        if (!std::isfinite(d.angle_deg)) throw ValidationError("angle must be finite", {"angle_deg"});
    }
    if (!(range.min >= 0.0 && range.max <= 3.0 && range.min <= range.max)) {
        throw ValidationError("alpha range must satisfy 0 <= min <= max <= 3", {"alpha_min", "alpha_max"});
    }

    constexpr double kInfeasible = std::numeric_limits<double>::infinity();
    AlphaCalibration out;
    auto score = [&](double alpha) {
        ++out.evaluations;
        ActuatorConfig trial = config;
        trial.geometry.alpha = alpha;
        try {
            return max_relative_angle_error(trial, data);
        } catch (const Error&) {
            return kInfeasible;
        }
    };

    constexpr int kScanPoints = 301;
    const int n = range.max > range.min ? kScanPoints : 1;
    const double h = n > 1 ? (range.max - range.min) / (n - 1) : 0.0;
    int best_index = -1;
    double best = kInfeasible;
    for (int k = 0; k < n; ++k) {
        const double s = score(range.min + k * h);
        if (s < best) {
            best = s;
            best_index = k;
        }
    }
    if (best_index < 0) {
        throw CalibrationError("no alpha in [" + std::to_string(range.min) + ", " +
                               std::to_string(range.max) + "] reproduces every pressure");
    }
    out.alpha = range.min + best_index * h;
    out.max_relative_error = best;

    if (n > 1 && best > 0.0) {
        // Golden-section refinement over the neighbouring scan cells.
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = range.min + std::max(best_index - 1, 0) * h;
        double b = range.min + std::min(best_index + 1, n - 1) * h;
        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double f1 = score(x1);
        double f2 = score(x2);
        while (b - a > 1e-9) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = score(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = score(x2);
            }
        }
        const double x = f1 <= f2 ? x1 : x2;
        const double f = std::min(f1, f2);
        if (f < best) {
            out.alpha = x;
            out.max_relative_error = f;
        }
    }
    return out;
}

}  // namespace foldbend
