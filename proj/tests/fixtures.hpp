#pragma once

#include "foldbend/bending.hpp"

namespace fixtures {

inline foldbend::ConnectorGeometry reference_geometry() {
    return {.a = 6.0, .b = 14.0, .l_c = 2.0, .h1 = 10.0, .t_w = 1.2, .t_c = 1.2, .alpha = 0.6, .H1 = 16.0};
}

inline constexpr double kDepth = 14.0;

/// 10 folds, NinjaFlex, A = 140 mm^2, lambda_max = 2.5.
inline foldbend::ActuatorConfig reference_actuator() {
    foldbend::ActuatorConfig c;
    c.geometry = reference_geometry();
    c.depth = kDepth;
    c.material = foldbend::MooneyRivlinModel::ninjaflex();
    c.n_folds = 10;
    c.area_a = 140.0;
    c.lambda_max = 2.5;
    return c;
}

inline constexpr const char* kReferenceConfigJson = R"({
  "geometry": {"a": 6, "b": 14, "l_c": 2, "h1": 10, "t_w": 1.2, "t_c": 1.2,
               "alpha": 0.6, "H1": 16, "depth": 14},
  "material": {"c10": -0.045, "c01": 2.898, "c11": -0.017, "c20": 0.00226, "c02": 0.183, "d": 0},
  "actuator": {"n_folds": 10, "area_a": 140},
  "solver": {"lambda_max": 2.5, "solver_tol": 1e-9}
}
)";

}  // namespace fixtures
