#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "foldbend/bending.hpp"
#include "foldbend/errors.hpp"
#include "oracles.hpp"

using namespace foldbend;

TEST_CASE("air work gradient") {
    auto cfg = fixtures::reference_actuator();
    CHECK(air_work_gradient(cfg, 0.0) == 0.0);
    CHECK(air_work_gradient(cfg, 200.0) == 2.0 * air_work_gradient(cfg, 100.0));
    CHECK_THROWS_AS(air_work_gradient(cfg, -1.0), DomainError);

    // H1 - h_e = 10 and x_e / h_ee = 0.8: 0.1 MPa * 140 * 5 * 0.8 = 56 N·mm.
    cfg.geometry.H1 = 10.0 + cfg.connector().h_e;
    cfg.h_ee_override = 5.0 / 0.8;
    CHECK(air_work_gradient(cfg, 100.0) == doctest::Approx(56.0).epsilon(1e-13));
}

TEST_CASE("strain work gradient") {
    auto cfg = fixtures::reference_actuator();
    CHECK(strain_work_gradient(cfg, 1.0) == 0.0);
    CHECK_THROWS_AS(strain_work_gradient(cfg, 0.99), DomainError);

    const double v_tt = cfg.connector().v_tt;
    auto fd_check = [&](const ActuatorConfig& c, double lambda) {
        auto w = [&](double l) { return v_tt * oracle::energy(c.material.coefficients(), oracle::plane_strain(l)); };
        const double fd = oracle::central_difference(w, lambda);
        CHECK(std::abs(strain_work_gradient(c, lambda) - fd) <= 1e-6 * std::abs(fd));
    };
    fd_check(cfg, 1.4);

    auto only_c10 = cfg;
    only_c10.material = MooneyRivlinModel({.c10 = 0.7});
    const double l = 1.3;
    CHECK(strain_work_gradient(only_c10, l) ==
          doctest::Approx(v_tt * 2.0 * 0.7 * (l - std::pow(l, -3))).epsilon(1e-13));
    fd_check(only_c10, 1.4);
}

TEST_CASE("reduced-polynomial gradient is a special case") {
    auto cfg = fixtures::reference_actuator();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(1.0, 2.5);
    for (double c30 : {0.0, 0.01}) {
        cfg.material = MooneyRivlinModel({.c10 = 0.5, .c20 = 0.02, .c30 = c30});
        for (int k = 0; k < 10; ++k) {
            const double l = u(rng);
            const double lit = oracle::reduced_polynomial_gradient(0.5, 0.02, c30, l, cfg.connector().v_tt);
            CHECK(std::abs(strain_work_gradient(cfg, l) - lit) <= 1e-12 * std::abs(lit));
        }
    }
}

TEST_CASE("zero pressure is the undeformed state") {
    const auto s = solve_equilibrium(fixtures::reference_actuator(), 0.0);
    CHECK(s.lambda_star == 1.0);
    CHECK(s.phi == 0.0);
    CHECK(s.theta == 0.0);
    CHECK(std::isinf(s.radius));
}

TEST_CASE("equilibrium matches the dense-scan oracle") {
    const auto cfg = fixtures::reference_actuator();
    const double v_tt = cfg.connector().v_tt;
    for (double p : {10.0, 50.0, 100.0, 130.0}) {
        const double air = air_work_gradient(cfg, p);
        auto g = [&](double l) {
            return v_tt * oracle::central_difference(
                              [&](double t) {
                                  return oracle::energy(cfg.material.coefficients(), oracle::plane_strain(t));
                              },
                              l, 1e-7) -
                   air;
        };
        // Analytic residual for the scan; the finite-difference one above is
        // only used as a coarse sanity check on the bracket.
        auto exact = [&](double l) { return strain_work_gradient(cfg, l) - air; };
        const double ref = oracle::dense_scan_root(exact, 1.0, cfg.lambda_max);
        const auto s = solve_equilibrium(cfg, p);
        CHECK(std::abs(s.lambda_star - ref) <= 1e-8);
        CHECK(std::abs(g(s.lambda_star)) < 1e-3 * air);
        CHECK(s.residual <= residual_tolerance(cfg, p));
        CHECK(s.phi == (cfg.connector().x_e / cfg.connector().h_ee) * (s.lambda_star - 1.0));
        CHECK(s.theta == cfg.n_folds * s.phi);
    }
    // 40-digit roots.
    CHECK(solve_equilibrium(cfg, 50.0).lambda_star == doctest::Approx(1.0039181454752691524).epsilon(1e-13));
    CHECK(solve_equilibrium(cfg, 130.0).lambda_star == doctest::Approx(1.0102832069752923647).epsilon(1e-13));
    CHECK(solve_equilibrium(cfg, 130.0).theta_deg() == doctest::Approx(4.75148677051404).epsilon(1e-10));
}

TEST_CASE("saturation and bad input") {
    const auto cfg = fixtures::reference_actuator();
    try {
        solve_equilibrium(cfg, 1e6);
        FAIL("expected saturation");
    } catch (const SaturationError& e) {
        CHECK(e.pressure_kpa() == 1e6);
        CHECK(e.gradient_at_lambda_max() < 0.0);
    }
    CHECK_THROWS_AS(solve_equilibrium(cfg, -5.0), DomainError);

    auto bad = cfg;
    bad.n_folds = 0;
    CHECK_THROWS_AS(solve_equilibrium(bad, 10.0), ValidationError);
    bad = cfg;
    bad.lambda_max = 1.0;
    CHECK_THROWS_AS(solve_equilibrium(bad, 10.0), ValidationError);
}

TEST_CASE("non-monotone strain gradient is reported") {
    auto cfg = fixtures::reference_actuator();
    // Softening material: the gradient rises, peaks and falls inside the bracket.
    cfg.material = MooneyRivlinModel({.c10 = 1.0, .c20 = -0.2});
    CHECK_THROWS_AS(solve_equilibrium(cfg, 5000.0), SolverError);
}

TEST_CASE("fold count scales the angle only") {
    auto cfg = fixtures::reference_actuator();
    auto doubled = cfg;
    doubled.n_folds = 2 * cfg.n_folds;
    for (double p : {20.0, 70.0, 130.0}) {
        const auto a = solve_equilibrium(cfg, p);
        const auto b = solve_equilibrium(doubled, p);
        CHECK(a.lambda_star == b.lambda_star);
        CHECK(a.phi == b.phi);
        CHECK(std::abs(b.theta - 2.0 * a.theta) <= 1e-12 * a.theta);
    }
}

TEST_CASE("pressure sweep") {
    const auto cfg = fixtures::reference_actuator();
    const auto states = pressure_sweep(cfg, 0.0, 130.0, 10.0);
    REQUIRE(states.size() == 14);
    CHECK(states.front().theta == 0.0);
    for (std::size_t k = 1; k < states.size(); ++k) {
        CHECK(states[k].pressure_kpa == doctest::Approx(10.0 * k));
        CHECK(states[k].theta > states[k - 1].theta);
        CHECK(states[k].lambda_star > states[k - 1].lambda_star);
    }
    // The pressure work is linear in P and the stiffness rises slowly, so the
    // stretch steps stay nearly even: no jumps.
    for (std::size_t k = 2; k < states.size(); ++k) {
        const double d1 = states[k - 1].lambda_star - states[k - 2].lambda_star;
        const double d2 = states[k].lambda_star - states[k - 1].lambda_star;
        CHECK(d2 == doctest::Approx(d1).epsilon(0.05));
    }

    const auto single = pressure_sweep(cfg, 0.0, 0.0, 10.0);
    REQUIRE(single.size() == 1);
    CHECK(single[0].theta == 0.0);

    CHECK_THROWS_AS(pressure_sweep(cfg, 0.0, 10.0, 0.0), ValidationError);
    CHECK_THROWS_AS(pressure_sweep(cfg, 20.0, 10.0, 1.0), ValidationError);
    CHECK(sweep_pressures(0.0, 1.0, 0.1).size() == 11);

    try {
        pressure_sweep(cfg, 0.0, 2e6, 1e6);
        FAIL("expected saturation");
    } catch (const SaturationError& e) {
        CHECK(std::string(e.what()).find("1000000") != std::string::npos);
    }
}

TEST_CASE("air gradient does not depend on stretch") {
    // air_work_gradient takes no stretch; the residual's change between two
    // stretches is exactly the strain term's change.
    const auto cfg = fixtures::reference_actuator();
    const double air = air_work_gradient(cfg, 80.0);
    const double r1 = strain_work_gradient(cfg, 1.1) - air;
    const double r2 = strain_work_gradient(cfg, 1.9) - air;
    CHECK((r2 - r1) == doctest::Approx(strain_work_gradient(cfg, 1.9) - strain_work_gradient(cfg, 1.1)));
}

namespace {

std::vector<AngleSample> synthetic_angles(const ActuatorConfig& cfg) {
    std::vector<AngleSample> out;
    for (double p = 10.0; p <= 130.0; p += 10.0) out.push_back({p, solve_equilibrium(cfg, p).theta_deg()});
    return out;
}

}  // namespace

TEST_CASE("alpha calibration round trip") {
    const auto cfg = fixtures::reference_actuator();
    const auto data = synthetic_angles(cfg);
    auto start = cfg;
    start.geometry.alpha = 1.7;
    const auto cal = calibrate_alpha(start, data, {0.0, 3.0});
    CHECK(std::abs(cal.alpha - 0.6) <= 0.02);
    CHECK(cal.max_relative_error <= 1e-3);
    CHECK(cal.evaluations > 0);

    // Narrow range that excludes the truth: best is the nearer end.
    const auto edge = calibrate_alpha(start, data, {1.0, 1.5});
    CHECK(edge.alpha == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(edge.max_relative_error > 1e-3);
}

TEST_CASE("alpha calibration degenerate data") {
    const auto cfg = fixtures::reference_actuator();
    const std::vector<AngleSample> rest(3, {0.0, 0.0});
    const auto cal = calibrate_alpha(cfg, rest, {0.25, 2.0});
    CHECK(cal.alpha == 0.25);
    CHECK(cal.max_relative_error == 0.0);

    const double theta = solve_equilibrium(cfg, 60.0).theta_deg();
    const std::vector<AngleSample> repeated(3, {60.0, theta});
    CHECK(std::abs(calibrate_alpha(cfg, repeated, {0.0, 3.0}).alpha - 0.6) <= 0.02);

    CHECK_THROWS_AS(calibrate_alpha(cfg, {}, {0.0, 3.0}), ValidationError);
    CHECK_THROWS_AS(calibrate_alpha(cfg, rest, {-0.5, 1.0}), ValidationError);
    CHECK_THROWS_AS(calibrate_alpha(cfg, rest, {0.0, 3.5}), ValidationError);

    const std::vector<AngleSample> hopeless{{1e6, 10.0}, {2e6, 20.0}, {3e6, 30.0}};
    CHECK_THROWS_AS(calibrate_alpha(cfg, hopeless, {0.0, 3.0}), CalibrationError);
}
