#pragma once

#include <span>
#include <string>
#include <vector>

namespace foldbend {

/// Polynomial coefficients of the incompressible Mooney-Rivlin strain energy,
/// all in MPa:
///
///   W = c10 (I1-3) + c01 (I2-3) + c11 (I1-3)(I2-3) + c20 (I1-3)^2 + c02 (I2-3)^2
///       + c30 (I1-3)^3
///
/// c30 is an optional reduced-polynomial extension and defaults to 0.
struct MooneyRivlinCoefficients {
    double c10 = 0.0;
    double c01 = 0.0;
    double c11 = 0.0;
    double c20 = 0.0;
    double c02 = 0.0;
    double c30 = 0.0;
};

class MooneyRivlinModel {
public:
    MooneyRivlinModel() = default;

    /// Throws ValidationError for non-finite coefficients or a nonzero
    /// compressibility parameter (the material is treated as incompressible).
    explicit MooneyRivlinModel(const MooneyRivlinCoefficients& coefficients,
                               double d_incompressible = 0.0);

    /// NinjaFlex TPU fit: C01=2.898, C10=-0.0450, C11=-0.017, C20=0.00226, C02=0.183 MPa.
    static MooneyRivlinModel ninjaflex();

    const MooneyRivlinCoefficients& coefficients() const noexcept { return c_; }
    double c10() const noexcept { return c_.c10; }
    double c01() const noexcept { return c_.c01; }
    double c11() const noexcept { return c_.c11; }
    double c20() const noexcept { return c_.c20; }
    double c02() const noexcept { return c_.c02; }
    double c30() const noexcept { return c_.c30; }
    double d_incompressible() const noexcept { return 0.0; }

private:
    MooneyRivlinCoefficients c_{};
};

struct StrainInvariants {
    double i1 = 3.0;
    double i2 = 3.0;
    double j = 1.0;
};

/// Incompressible uniaxial tension: stretches (l, l^-1/2, l^-1/2).
StrainInvariants invariants_uniaxial(double lambda);

/// Incompressible plane strain: stretches (l, 1/l, 1). Gives i1 == i2.
StrainInvariants invariants_plane_strain(double lambda);

/// Strain energy density in MPa (= N·mm/mm^3).
double strain_energy_density(const MooneyRivlinModel& model, const StrainInvariants& inv);

/// Partial derivatives dW/dI1 and dW/dI2.
struct EnergyGradient {
    double d_i1 = 0.0;
    double d_i2 = 0.0;
};
EnergyGradient strain_energy_gradient(const MooneyRivlinModel& model, const StrainInvariants& inv);

/// Nominal (engineering) uniaxial stress dW/dlambda, in MPa.
double nominal_stress_uniaxial(const MooneyRivlinModel& model, double lambda);

/// d/dlambda of the plane-strain energy density, in MPa.
double plane_strain_energy_derivative(const MooneyRivlinModel& model, double lambda);

struct StressStrainSample {
    double strain = 0.0;      // engineering strain; stretch = 1 + strain
    double stress_mpa = 0.0;  // nominal stress
};

struct FitReport {
    MooneyRivlinModel model;
    double residual_norm = 0.0;     // ||predicted - measured||_2, MPa
    double condition_number = 0.0;  // of the column-scaled design matrix
    std::size_t sample_count = 0;
    std::vector<std::string> warnings;
};

/// Unweighted linear least squares of the five Mooney-Rivlin coefficients
/// against nominal uniaxial stress. c30 and d stay at zero.
///
/// Throws InsufficientDataError for fewer than 6 samples, ValidationError for
/// unordered or out-of-range strains, and ConditioningError when the basis is
/// rank deficient.
FitReport fit_mooney_rivlin(std::span<const StressStrainSample> data);

/// Condition number above which the fit is rejected.
inline constexpr double kMaxFitCondition = 1e12;

}  // namespace foldbend
