#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "foldbend/bending.hpp"
#include "foldbend/material.hpp"
#include "foldbend/vel.hpp"

namespace foldbend::io {

/// Fixed 9-significant-digit rendering used for every numeric output.
std::string format_number(double value);

/// Rows of a headed numeric CSV. The header must equal `header` exactly
/// (surrounding whitespace and a trailing CR are ignored); blank lines are skipped.
std::vector<std::vector<double>> read_numeric_csv(std::istream& in, const std::vector<std::string>& header,
                                                  const std::string& source);
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  const std::vector<std::string>& header);

/// `strain,stress_mpa`
std::vector<StressStrainSample> read_stress_strain_csv(const std::filesystem::path& path);
/// `pressure_kpa,angle_deg`
std::vector<AngleSample> read_angle_csv(const std::filesystem::path& path);
/// `x_mm,y_mm`
ContourProfile read_contour_csv(const std::filesystem::path& path);

/// JSON document with keys c10, c01, c11, c20, c02, d (and optional c30).
MooneyRivlinModel material_from_json_text(const std::string& text, const std::string& source);
MooneyRivlinModel read_material(const std::filesystem::path& path);
std::string material_to_json(const MooneyRivlinModel& model);
void write_material(const std::filesystem::path& path, const MooneyRivlinModel& model);

/// Actuator config document with blocks geometry, material (or a
/// material_file path relative to the config), actuator, solver.
ActuatorConfig config_from_json_text(const std::string& text, const std::filesystem::path& base_dir,
                                     const std::string& source);
ActuatorConfig read_config(const std::filesystem::path& path);

inline const std::vector<std::string> kSweepHeader = {"pressure_kpa", "lambda",    "phi_rad",
                                                      "theta_rad",    "theta_deg", "residual"};
inline const std::vector<std::string> kShapeHeader = {"x_mm", "y_mm", "heading_rad"};

void write_sweep_header(std::ostream& out);
void write_sweep_row(std::ostream& out, const BendingState& state);
void write_shape_csv(std::ostream& out, const BackboneShape& shape);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace foldbend::io
