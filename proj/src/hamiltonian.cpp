#include "aqm/hamiltonian.hpp"

#include <cmath>
#include <numbers>

#include "aqm/errors.hpp"
#include "fft.hpp"

namespace aqm {

FractionalExponent::FractionalExponent(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw PreconditionError("fractional exponent must be finite and > 0");
    }
}

std::string_view to_string(PotentialForm f) {
    switch (f) {
        case PotentialForm::power_law: return "power_law";
        case PotentialForm::harmonic: return "harmonic";
        case PotentialForm::soft_coulomb: return "soft_coulomb";
        case PotentialForm::sampled: return "sampled";
    }
    return "?";
}

PotentialForm potential_form_from_string(std::string_view s) {
    if (s == "power_law") return PotentialForm::power_law;
    if (s == "harmonic") return PotentialForm::harmonic;
    if (s == "soft_coulomb") return PotentialForm::soft_coulomb;
    if (s == "sampled") return PotentialForm::sampled;
    throw PreconditionError("unknown potential form '" + std::string(s) + "'");
}

Potential Potential::zero() { return power_law(0.0, 1.0); }

Potential Potential::power_law(double coefficient, double beta) {
    if (!std::isfinite(coefficient) || !(beta > 0.0) || !std::isfinite(beta)) {
        throw PreconditionError("power-law potential needs finite coefficient and beta > 0");
    }
    Potential v;
    v.form_ = PotentialForm::power_law;
    v.coefficient_ = coefficient;
    v.beta_ = beta;
    return v;
}

Potential Potential::harmonic(double spring_constant) {
    if (!std::isfinite(spring_constant)) throw PreconditionError("spring constant must be finite");
    Potential v;
    v.form_ = PotentialForm::harmonic;
    v.coefficient_ = spring_constant;
    v.beta_ = 2.0;
    return v;
}

Potential Potential::soft_coulomb(double coefficient, double softening) {
    if (!(softening > 0.0) || !std::isfinite(softening) || !std::isfinite(coefficient)) {
        throw PreconditionError("soft-Coulomb potential needs softening > 0");
    }
    Potential v;
    v.form_ = PotentialForm::soft_coulomb;
    v.coefficient_ = coefficient;
    v.softening_ = softening;
    return v;
}

Potential Potential::sampled(std::vector<double> values) {
    for (double x : values) {
        if (!std::isfinite(x)) throw PreconditionError("sampled potential must be finite");
    }
    Potential v;
    v.form_ = PotentialForm::sampled;
    v.samples_ = std::move(values);
    return v;
}

bool Potential::is_zero() const {
    if (form_ == PotentialForm::sampled) {
        for (double x : samples_) {
            if (x != 0.0) return false;
        }
        return true;
    }
    return coefficient_ == 0.0;
}

std::vector<double> Potential::evaluate(const Grid& grid) const {
    const auto& x = grid.positions();
    std::vector<double> v(grid.size());
    switch (form_) {
        case PotentialForm::power_law:
            for (std::size_t j = 0; j < v.size(); ++j) {
                v[j] = coefficient_ == 0.0 ? 0.0 : coefficient_ * std::pow(std::abs(x[j]), beta_);
            }
            break;
        case PotentialForm::harmonic:
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * coefficient_ * x[j] * x[j];
            break;
        case PotentialForm::soft_coulomb:
            for (std::size_t j = 0; j < v.size(); ++j) {
                v[j] = -coefficient_ / std::sqrt(x[j] * x[j] + softening_ * softening_);
            }
            break;
        case PotentialForm::sampled:
            if (samples_.size() != grid.size()) {
                throw PreconditionError("sampled potential does not match grid size");
            }
            v = samples_;
            break;
    }
    return v;
}

std::vector<double> Potential::virial_product(const Grid& grid) const {
    const auto& x = grid.positions();
    const std::size_t n = grid.size();
    std::vector<double> out(n, 0.0);
    switch (form_) {
        case PotentialForm::power_law:
            // x * beta sign(x)|x|^{beta-1} = beta |x|^beta; zero at the origin
            for (std::size_t j = 0; j < n; ++j) {
                if (x[j] != 0.0 && coefficient_ != 0.0) {
                    out[j] = coefficient_ * beta_ * std::pow(std::abs(x[j]), beta_);
                }
            }
            break;
        case PotentialForm::harmonic:
            for (std::size_t j = 0; j < n; ++j) out[j] = coefficient_ * x[j] * x[j];
            break;
        case PotentialForm::soft_coulomb: {
            const double a2 = softening_ * softening_;
            for (std::size_t j = 0; j < n; ++j) {
                const double r2 = x[j] * x[j] + a2;
                out[j] = coefficient_ * x[j] * x[j] / (r2 * std::sqrt(r2));
            }
            break;
        }
        case PotentialForm::sampled: {
            auto v = evaluate(grid);
            ComplexVector spec(v.begin(), v.end());
            detail::fft_forward(spec);
            const double wave = 2.0 * std::numbers::pi / grid.length();
            for (std::size_t j = 0; j < n; ++j) {
                const long k = grid.frequency(j);
                spec[j] *= (k == -static_cast<long>(n / 2))
                               ? Complex{0.0, 0.0}
                               : Complex{0.0, wave * static_cast<double>(k)};
            }
            detail::fft_backward(spec);
            for (std::size_t j = 0; j < n; ++j) {
                out[j] = x[j] * spec[j].real() / static_cast<double>(n);
            }
            break;
        }
    }
    return out;
}

void HamiltonianSpec::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw PreconditionError("mass must be positive");
    constants.validate();
}

Complex HamiltonianSpec::kinetic_energy(double p) const {
    if (branch == BranchPolicy::riesz) return dispersion(p, alpha, mass);
    const Complex m = momentum_power(p, alpha, branch);
    return m * m / std::pow(2.0 * mass, alpha.value());
}

double dispersion(double p, double alpha, double mass) {
    return std::pow(std::abs(p), 2.0 * alpha) / std::pow(2.0 * mass, alpha);
}

}  // namespace aqm
