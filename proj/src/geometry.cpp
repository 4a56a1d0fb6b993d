#include "foldbend/geometry.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "foldbend/errors.hpp"

namespace foldbend {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

[[noreturn]] void fail(const std::string& what, const std::vector<std::string>& fields) {
    std::string msg = what;
    for (std::size_t k = 0; k < fields.size(); ++k) msg += (k == 0 ? ": " : ", ") + fields[k];
    throw ValidationError(msg, fields);
}

}  // namespace

void validate(const ConnectorGeometry& g) {
    std::vector<std::string> bad;
    if (!positive(g.a)) bad.emplace_back("a");
    if (!positive(g.b) || (positive(g.a) && g.b < g.a)) bad.emplace_back("b");
    if (!positive(g.l_c)) bad.emplace_back("l_c");
    if (!positive(g.h1)) bad.emplace_back("h1");
    if (!positive(g.t_w)) bad.emplace_back("t_w");
    if (!positive(g.t_c)) bad.emplace_back("t_c");
    if (!std::isfinite(g.alpha) || g.alpha < 0.0 || g.alpha > 3.0) bad.emplace_back("alpha");
    if (!positive(g.H1) || (positive(g.h1) && g.H1 <= g.h1)) bad.emplace_back("H1");
    if (!bad.empty()) fail("invalid connector geometry", bad);
}

EquivalentConnector equivalent_connector(const ConnectorGeometry& g, double depth,
                                         std::optional<double> h_ee_override) {
    validate(g);
    if (!positive(depth)) fail("invalid connector geometry", {"depth"});
    if (h_ee_override && !positive(*h_ee_override)) fail("invalid connector geometry", {"h_ee_override"});

    EquivalentConnector e;
    e.x_e = g.a / 2.0 + g.l_c;
    e.h_e = (g.a / g.b) * (g.h1 + std::pow(g.a / 2.0, g.alpha));
    e.t_e = (g.t_w + g.t_c) / 2.0;

    const double t_b = g.t_c;
    e.v_s = g.a * g.h1 * g.t_w;
    e.v_t = g.a * depth * g.t_c;
    e.v_b = g.a * depth * t_b;
    e.v_tt = 2.0 * e.v_s + e.v_t + e.v_b;

    if (h_ee_override) {
        e.h_ee = *h_ee_override;
    } else {
        const double z_bottom = t_b / 2.0;
        const double z_side = t_b + g.h1 / 2.0;
        const double z_top = t_b + g.h1 + g.t_c / 2.0;
        const double moment = 2.0 * e.v_s * z_side + e.v_t * z_top + e.v_b * z_bottom;
        e.h_ee = moment / e.v_tt;
    }
    if (e.h_ee > g.H1) {
        std::ostringstream msg;
        msg << "energy centroid height " << e.h_ee << " mm lies above section height H1 = " << g.H1;
        throw ValidationError(msg.str(), {h_ee_override ? "h_ee_override" : "H1"});
    }
    return e;
}

}  // namespace foldbend
