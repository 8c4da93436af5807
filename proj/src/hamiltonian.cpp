#include "aecoupler/hamiltonian.hpp"

#include <cmath>

#include "aecoupler/errors.hpp"

namespace aecoupler {

HermitianMatrix2 diabatic_hamiltonian(double delta, double kappa) {
    return {Complex(delta, 0.0), Complex(kappa, 0.0),
            Complex(kappa, 0.0), Complex(-delta, 0.0)};
}

HermitianMatrix2 cd_hamiltonian(double theta_dot) {
    const double half = 0.5 * theta_dot;
    return {Complex(0.0, 0.0), Complex(0.0, -half),
            Complex(0.0, half), Complex(0.0, 0.0)};
}

HermitianMatrix2 effective_hamiltonian(const AllenEberlyScheme& scheme,
                                       const CounterdiabaticSpec& spec, double z) {
    const double delta = mismatch_at(scheme, z);
    const double kappa = coupling_at(scheme, z);
    const double kappa_a = cd_coupling(spec, scheme, z);
    return {Complex(delta, 0.0), Complex(kappa, -kappa_a),
            Complex(kappa, kappa_a), Complex(-delta, 0.0)};
}

HermitianMatrix2 phase_rotated_hamiltonian(const AllenEberlyScheme& scheme,
                                           const CounterdiabaticSpec& spec, double z) {
    const auto eff = effective_quantities(scheme, spec, z);
    return diabatic_hamiltonian(eff.delta_eff, eff.kappa_eff);
}

std::array<double, 2> eigenvalues(const HermitianMatrix2& h) {
    const double mean = 0.5 * (h.a11.real() + h.a22.real());
    const double half_gap = std::hypot(0.5 * (h.a11.real() - h.a22.real()), std::abs(h.a12));
    return {mean + half_gap, mean - half_gap};
}

BasisTransform2 mixing_transform(double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return {{Complex(c), Complex(-s), Complex(s), Complex(c)}, Matrix2c::zero()};
}

BasisTransform2 mixing_transform_with_rate(double theta, double theta_dot) {
    auto basis = mixing_transform(theta);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double half_rate = 0.5 * theta_dot;
    basis.du = {Complex(-s * half_rate), Complex(-c * half_rate),
                Complex(c * half_rate), Complex(-s * half_rate)};
    return basis;
}

HermitianMatrix2 transform_hamiltonian(const HermitianMatrix2& h, const BasisTransform2& basis) {
    if (!is_unitary(basis.u)) {
        throw NonUnitaryError("basis transform is not unitary to 1e-12");
    }
    const Matrix2c u_inv = basis.u.adjoint();
    return u_inv * h * basis.u - Complex(0.0, 1.0) * (u_inv * basis.du);
}

double adiabaticity_ratio(const AllenEberlyScheme& scheme, double z) {
    const double split = std::hypot(mismatch_at(scheme, z), coupling_at(scheme, z));
    return 0.5 * std::abs(mixing_angle_rate(scheme, z)) / split;
}

Vector2c input_supermode(double theta) {
    return {Complex(std::sin(0.5 * theta)), Complex(-std::cos(0.5 * theta))};
}

} // namespace aecoupler
