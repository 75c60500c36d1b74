#pragma once

#include <string_view>
#include <vector>

#include "aqm/branch.hpp"
#include "aqm/constants.hpp"
#include "aqm/grid.hpp"

namespace aqm {

/// Anomalous exponent alpha > 0.
class FractionalExponent {
public:
    explicit FractionalExponent(double alpha);
    double value() const { return alpha_; }
    operator double() const { return alpha_; }

private:
    double alpha_;
};

enum class PotentialForm { power_law, harmonic, soft_coulomb, sampled };

std::string_view to_string(PotentialForm f);
PotentialForm potential_form_from_string(std::string_view s);

/// External potential V(x^beta) on the grid. Fractional powers of negative
/// x are taken as |x|^beta.
///
///   power_law     V = coefficient |x|^beta
///   harmonic      V = coefficient x^2 / 2   (coefficient is the spring constant m w^2)
///   soft_coulomb  V = -coefficient / sqrt(x^2 + softening^2)
///   sampled       V = samples[j]
class Potential {
public:
    static Potential zero();
    static Potential power_law(double coefficient, double beta);
    static Potential harmonic(double spring_constant);
    static Potential soft_coulomb(double coefficient, double softening);
    static Potential sampled(std::vector<double> values);

    PotentialForm form() const { return form_; }
    double beta() const { return beta_; }
    double coefficient() const { return coefficient_; }
    double softening() const { return softening_; }
    const std::vector<double>& samples() const { return samples_; }

    bool is_zero() const;

    /// V(x_j)
    std::vector<double> evaluate(const Grid& grid) const;

    /// x_j V'(x_j). Analytic for closed forms; for |x|^beta the origin gets
    /// 0. Sampled potentials are differentiated spectrally.
    std::vector<double> virial_product(const Grid& grid) const;

private:
    Potential() = default;
    PotentialForm form_ = PotentialForm::power_law;
    double beta_ = 1.0;
    double coefficient_ = 0.0;
    double softening_ = 0.0;
    std::vector<double> samples_;
};

/// H = |p|^{2 alpha} / (2m)^alpha + V(x)
struct HamiltonianSpec {
    FractionalExponent alpha{1.0};
    double mass = 1.0;
    Potential potential = Potential::zero();
    BranchPolicy branch = BranchPolicy::riesz;
    PhysicalConstants constants = PhysicalConstants::natural();

    void validate() const;

    /// Kinetic energy of momentum p under the spec's branch policy:
    /// m(p)^2 / (2m)^alpha, which is |p|^{2 alpha}/(2m)^alpha for riesz.
    Complex kinetic_energy(double p) const;
};

/// E(p) = |p|^{2 alpha} / (2m)^alpha
double dispersion(double p, double alpha, double mass);

}  // namespace aqm
