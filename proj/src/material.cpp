#include "foldbend/material.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "foldbend/errors.hpp"

namespace foldbend {

namespace {

void require_stretch(double lambda, const char* where) {
    if (!std::isfinite(lambda) || lambda <= 0.0) {
        std::ostringstream msg;
        msg << where << ": stretch must be positive and finite, got " << lambda;
        throw DomainError(msg.str());
    }
}

// dI1/dlambda and dI2/dlambda under uniaxial incompressible kinematics.
struct UniaxialRates {
    double d_i1;
    double d_i2;
};

UniaxialRates uniaxial_rates(double lambda) {
    return {2.0 * lambda - 2.0 / (lambda * lambda), 2.0 - 2.0 / (lambda * lambda * lambda)};
}

}  // namespace

MooneyRivlinModel::MooneyRivlinModel(const MooneyRivlinCoefficients& coefficients,
                                     double d_incompressible)
    : c_(coefficients) {
    std::vector<std::string> bad;
    auto check = [&bad](double v, const char* name) {
        if (!std::isfinite(v)) bad.emplace_back(name);
    };
    check(c_.c10, "c10");
    check(c_.c01, "c01");
    check(c_.c11, "c11");
    check(c_.c20, "c20");
    check(c_.c02, "c02");
    check(c_.c30, "c30");
    if (!bad.empty()) {
        std::string msg = "Mooney-Rivlin coefficients must be finite:";
        for (const auto& f : bad) msg += " " + f;
        throw ValidationError(msg, bad);
    }
    if (d_incompressible != 0.0) {
        throw ValidationError("incompressibility parameter d must be 0 (incompressible material)",
                              {"d"});
    }
}

MooneyRivlinModel MooneyRivlinModel::ninjaflex() {
    return MooneyRivlinModel({.c10 = -0.0450, .c01 = 2.898, .c11 = -0.017, .c20 = 0.00226, .c02 = 0.183});
}

StrainInvariants invariants_uniaxial(double lambda) {
    require_stretch(lambda, "invariants_uniaxial");
    return {lambda * lambda + 2.0 / lambda, 2.0 * lambda + 1.0 / (lambda * lambda), 1.0};
}

StrainInvariants invariants_plane_strain(double lambda) {
    require_stretch(lambda, "invariants_plane_strain");
    const double i = lambda * lambda + 1.0 / (lambda * lambda) + 1.0;
    return {i, i, 1.0};
}

double strain_energy_density(const MooneyRivlinModel& model, const StrainInvariants& inv) {
    const double x1 = inv.i1 - 3.0;
    const double x2 = inv.i2 - 3.0;
    return model.c10() * x1 + model.c01() * x2 + model.c11() * x1 * x2 + model.c20() * x1 * x1 +
           model.c02() * x2 * x2 + model.c30() * x1 * x1 * x1;
}

EnergyGradient strain_energy_gradient(const MooneyRivlinModel& model, const StrainInvariants& inv) {
    const double x1 = inv.i1 - 3.0;
    const double x2 = inv.i2 - 3.0;
    return {model.c10() + model.c11() * x2 + 2.0 * model.c20() * x1 + 3.0 * model.c30() * x1 * x1,
            model.c01() + model.c11() * x1 + 2.0 * model.c02() * x2};
}

double nominal_stress_uniaxial(const MooneyRivlinModel& model, double lambda) {
    const auto inv = invariants_uniaxial(lambda);
    const auto g = strain_energy_gradient(model, inv);
    const auto r = uniaxial_rates(lambda);
    return g.d_i1 * r.d_i1 + g.d_i2 * r.d_i2;
}

double plane_strain_energy_derivative(const MooneyRivlinModel& model, double lambda) {
    const auto inv = invariants_plane_strain(lambda);
    const auto g = strain_energy_gradient(model, inv);
    // i1 == i2 == l^2 + l^-2 + 1, so both invariants move at 2(l - l^-3).
    const double rate = 2.0 * (lambda - 1.0 / (lambda * lambda * lambda));
    return (g.d_i1 + g.d_i2) * rate;
}

FitReport fit_mooney_rivlin(std::span<const StressStrainSample> data) {
    constexpr std::size_t kMinSamples = 6;
    if (data.size() < kMinSamples) {
        std::ostringstream msg;
        msg << "Mooney-Rivlin fit needs at least " << kMinSamples << " samples, got " << data.size();
        throw InsufficientDataError(msg.str());
    }

    double peak = 0.0;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const auto& s = data[k];
        if (!std::isfinite(s.strain) || !std::isfinite(s.stress_mpa) || s.strain <= -1.0) {
            std::ostringstream msg;
            msg << "sample " << k << ": strain must be finite and > -1, stress finite";
            throw ValidationError(msg.str(), {"strain"});
        }
        peak = std::max(peak, std::abs(s.stress_mpa));
    }
    if (std::none_of(data.begin(), data.end(), [](const auto& s) { return s.strain > 0.0; })) {
        throw InsufficientDataError("Mooney-Rivlin fit needs samples with positive strain");
    }

    // Each column is the stress response to a unit value of one coefficient.
    const auto n = static_cast<Eigen::Index>(data.size());
    Eigen::MatrixXd basis(n, 5);
    Eigen::VectorXd stress(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lambda = 1.0 + data[static_cast<std::size_t>(k)].strain;
        const auto inv = invariants_uniaxial(lambda);
        const auto r = uniaxial_rates(lambda);
        const double x1 = inv.i1 - 3.0;
        const double x2 = inv.i2 - 3.0;
        basis(k, 0) = r.d_i1;                        // c10
        basis(k, 1) = r.d_i2;                        // c01
        basis(k, 2) = r.d_i1 * x2 + x1 * r.d_i2;     // c11
        basis(k, 3) = 2.0 * x1 * r.d_i1;             // c20
        basis(k, 4) = 2.0 * x2 * r.d_i2;             // c02
        stress(k) = data[static_cast<std::size_t>(k)].stress_mpa;
    }

    Eigen::VectorXd scale = basis.colwise().norm().transpose();
    double cond = std::numeric_limits<double>::infinity();
    Eigen::VectorXd solution = Eigen::VectorXd::Zero(5);
    if ((scale.array() > 0.0).all()) {
        const Eigen::MatrixXd scaled = basis * scale.cwiseInverse().asDiagonal();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) > 0.0) cond = sv(0) / sv(sv.size() - 1);
        if (cond <= kMaxFitCondition) {
            solution = (svd.solve(stress).array() / scale.array()).matrix();
        }
    }
    if (!(cond <= kMaxFitCondition)) {
        std::ostringstream msg;
        msg << "Mooney-Rivlin basis is rank deficient on this data (condition number " << cond
            << "); strains must span several distinct stretches";
        throw ConditioningError(msg.str(), cond);
    }

    for (std::size_t k = 1; k < data.size(); ++k) {
        if (!(data[k].strain > data[k - 1].strain)) {
            std::ostringstream msg;
            msg << "strains must be strictly increasing (sample " << k << ")";
            throw ValidationError(msg.str(), {"strain"});
        }
    }
    if (data.front().strain == 0.0 && std::abs(data.front().stress_mpa) > 0.05 * peak + 1e-12) {
        throw ValidationError("sample at zero strain must carry (near) zero stress", {"stress_mpa"});
    }

    FitReport report;
    report.model = MooneyRivlinModel({.c10 = solution(0),
                                      .c01 = solution(1),
                                      .c11 = solution(2),
                                      .c20 = solution(3),
                                      .c02 = solution(4)});
    report.residual_norm = (basis * solution - stress).norm();
    report.condition_number = cond;
    report.sample_count = data.size();

    // Drucker stability is not enforced; flag a falling stress curve instead.
    double prev = nominal_stress_uniaxial(report.model, 1.0 + data.front().strain);
    for (std::size_t k = 1; k < data.size(); ++k) {
        const double lo = 1.0 + data[k - 1].strain;
        const double hi = 1.0 + data[k].strain;
        const double mid = nominal_stress_uniaxial(report.model, 0.5 * (lo + hi));
        const double end = nominal_stress_uniaxial(report.model, hi);
        if (mid < prev || end < mid) {
            std::ostringstream msg;
            msg << "fitted model has negative stress slope near strain " << data[k].strain;
            report.warnings.push_back(msg.str());
            break;
        }
        prev = end;
    }
    return report;
}

}  // namespace foldbend
