#pragma once

#include <optional>
#include <span>
#include <vector>

#include "foldbend/geometry.hpp"
#include "foldbend/material.hpp"

namespace foldbend {

/// A complete fold-based actuator. Units: mm, MPa; pressures passed to the
/// solver functions are in kPa.
struct ActuatorConfig {
    ConnectorGeometry geometry;
    double depth = 0.0;  // finger depth, mm
    MooneyRivlinModel material;
    int n_folds = 1;
    double area_a = 0.0;      // pressurized cross-section area, mm^2
    double lambda_max = 2.5;  // upper end of the stretch bracket
    /// Residual tolerance relative to the load scale P·A·H1 (N·mm).
    double solver_tol = 1e-9;
    std::optional<double> h_ee_override;
    /// Arc length of one fold in the backbone shape; defaults to 2 x_e.
    std::optional<double> segment_pitch;

    EquivalentConnector connector() const;
    double pitch() const;
};

/// Throws ValidationError naming the offending fields.
void validate(const ActuatorConfig& config);

struct BendingState {
    double pressure_kpa = 0.0;
    double lambda_star = 1.0;
    double phi = 0.0;       // per-fold angle, rad
    double theta = 0.0;     // total angle, rad
    double residual = 0.0;  // |strain gradient - air gradient| at lambda_star, N·mm
    double radius = 0.0;    // fold bend radius h_ee / (lambda - 1), mm; +inf when straight

    double theta_deg() const;
};

inline constexpr double kKpaToMpa = 1e-3;

/// Derivative of the pressure work with respect to the wall stretch, N·mm.
/// Independent of the stretch.
double air_work_gradient(const ActuatorConfig& config, double pressure_kpa);

/// Derivative of the stored strain energy V_tt W(lambda) with respect to
/// the wall stretch, N·mm. Zero at lambda = 1.
double strain_work_gradient(const ActuatorConfig& config, double lambda);

/// Absolute residual tolerance: solver_tol · P·A·H1.
double residual_tolerance(const ActuatorConfig& config, double pressure_kpa);

/// Assembles the state for a given stretch: phi = (x_e/h_ee)(lambda-1), theta = n phi.
BendingState make_state(const ActuatorConfig& config, double pressure_kpa, double lambda,
                        double residual);

/// Equilibrium stretch where strain_work_gradient equals air_work_gradient.
///
/// A geometric scan of [1, lambda_max] certifies the bracket and checks that
/// the strain gradient increases, then plain bisection runs to full precision.
/// Throws SaturationError when the bracket does not contain the root and
/// SolverError when the strain gradient is not monotone.
BendingState solve_equilibrium(const ActuatorConfig& config, double pressure_kpa);

/// p_min, p_min + step, ... up to p_max (inclusive, with a small rounding allowance).
std::vector<double> sweep_pressures(double p_min, double p_max, double step);

/// One state per pressure from sweep_pressures, in pressure order. Solver
/// errors are re-thrown with the failing pressure in the message.
std::vector<BendingState> pressure_sweep(const ActuatorConfig& config, double p_min, double p_max,
                                         double step);

struct AngleSample {
    double pressure_kpa = 0.0;
    double angle_deg = 0.0;
};

struct AlphaRange {
    double min = 0.0;
    double max = 3.0;
};

struct AlphaCalibration {
    double alpha = 0.0;
    double max_relative_error = 0.0;
    int evaluations = 0;
};

/// Largest |predicted - measured| / |measured| over the data. Throws if any
/// pressure cannot be solved.
double max_relative_angle_error(const ActuatorConfig& config, std::span<const AngleSample> data);

/// Finds alpha in the range minimizing the max relative angle error: a uniform
/// scan followed by golden-section refinement around the best scan point.
/// Candidates whose solve fails are skipped. Ties go to the smaller alpha.
AlphaCalibration calibrate_alpha(const ActuatorConfig& config, std::span<const AngleSample> data,
                                 AlphaRange range);

}  // namespace foldbend
