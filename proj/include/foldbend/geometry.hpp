#pragma once

#include <optional>

namespace foldbend {

/// Raw cross-section dimensions of one fold. Lengths in mm.
struct ConnectorGeometry {
    double a = 0.0;      // plate short span
    double b = 0.0;      // plate long span
    double l_c = 0.0;    // connector length
    double h1 = 0.0;     // connector height
    double t_w = 0.0;    // vertical wall thickness
    double t_c = 0.0;    // top wall thickness
    double alpha = 0.0;  // aspect-ratio exponent, in [0, 3]
    double H1 = 0.0;     // overall section height
};

/// Lumped single-plate replacement of a fold.
struct EquivalentConnector {
    double x_e = 0.0;   // half pitch, mm
    double h_e = 0.0;   // equivalent height, mm
    double t_e = 0.0;   // equivalent thickness, mm
    double h_ee = 0.0;  // height of the stored-energy centroid above the section base, mm
    double v_s = 0.0;   // one side wall, mm^3
    double v_t = 0.0;   // top wall, mm^3
    double v_b = 0.0;   // bottom wall, mm^3
    double v_tt = 0.0;  // 2 v_s + v_t + v_b, mm^3
};

/// Throws ValidationError listing every offending field.
void validate(const ConnectorGeometry& geom);

/// Equivalent connector of a fold of the given finger depth (mm).
///
/// x_e = a/2 + l_c, h_e = (a/b)(h1 + (a/2)^alpha) with a/2 taken as a plain
/// number of millimetres, t_e = (t_w + t_c)/2.
///
/// Wall plates are a x h1 (sides, thickness t_w), a x depth (top, t_c) and
/// a x depth (bottom, also t_c). Stacked bottom wall, side walls, top wall,
/// h_ee is the volume-weighted mean of the wall centroid heights measured
/// from the underside of the bottom wall. `h_ee_override` replaces that value.
EquivalentConnector equivalent_connector(const ConnectorGeometry& geom, double depth,
                                         std::optional<double> h_ee_override = std::nullopt);

}  // namespace foldbend
