#pragma once

#include <array>

#include "aecoupler/matrix2.hpp"
#include "aecoupler/scheme.hpp"

namespace aecoupler {

/// All coupler operators are traceless Hermitian 2x2 matrices in units of
/// mm^-1; they multiply d/dz in the evolution equations.
using HermitianMatrix2 = Matrix2c;

/// Unitary change of basis, optionally with its z-derivative for
/// transformation rules that pick up a -i U^-1 dU/dz term.
struct BasisTransform2 {
    Matrix2c u;
    Matrix2c du; ///< dU/dz; zero when the transform is taken as constant
};

/// [[Delta, kappa], [kappa, -Delta]].
HermitianMatrix2 diabatic_hamiltonian(double delta, double kappa);

/// [[0, -i theta_dot/2], [i theta_dot/2, 0]]: the drive that cancels the
/// non-adiabatic coupling generated by a rotating eigenbasis.
HermitianMatrix2 cd_hamiltonian(double theta_dot);

/// [[Delta, kappa - i kappa_a], [kappa + i kappa_a, -Delta]] with the fields
/// evaluated at z. Equals diabatic + counterdiabatic parts entrywise.
HermitianMatrix2 effective_hamiltonian(const AllenEberlyScheme& scheme,
                                       const CounterdiabaticSpec& spec, double z);

/// Real-symmetric form [[delta_eff, kappa_eff], [kappa_eff, -delta_eff]]
/// obtained by rotating away the phase of the complex coupling; generates
/// the same populations as effective_hamiltonian.
HermitianMatrix2 phase_rotated_hamiltonian(const AllenEberlyScheme& scheme,
                                           const CounterdiabaticSpec& spec, double z);

/// Eigenvalues of a Hermitian 2x2, ordered {+, -}.
std::array<double, 2> eigenvalues(const HermitianMatrix2& h);

/// Rotation [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]
/// that diagonalizes the diabatic form at mixing angle theta. du is zero.
BasisTransform2 mixing_transform(double theta);

/// Same rotation carrying du = (dU/dtheta) * theta_dot.
BasisTransform2 mixing_transform_with_rate(double theta, double theta_dot);

/// H'(z) = U^-1 H U - i U^-1 dU/dz. Throws NonUnitaryError if U fails its
/// unitarity check (1e-12 on U^dagger U - I).
HermitianMatrix2 transform_hamiltonian(const HermitianMatrix2& h, const BasisTransform2& basis);

/// |theta_dot|/2 divided by sqrt(Delta^2 + kappa^2); values well below 1
/// mean the coupler operates adiabatically at z.
double adiabaticity_ratio(const AllenEberlyScheme& scheme, double z);

/// Instantaneous eigenvector continuously connected to the waveguide-1
/// input at the z = -L end (the lower-eigenvalue branch):
/// (sin(theta/2), -cos(theta/2)).
Vector2c input_supermode(double theta);

} // namespace aecoupler
