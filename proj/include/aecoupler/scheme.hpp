#pragma once

#include <string>

namespace aecoupler {

/// Tanh-mismatch / sech-coupling profile pair for a two-waveguide coupler.
/// The device occupies z in [-L, +L] (total length 2L); the mismatch
/// Delta(z) = delta0 * tanh(2 pi z / L) sweeps from -delta0 to +delta0 and
/// the coupling kappa(z) = kappa0 * sech(2 pi z / L) peaks at the center.
/// Units are mm for z and mm^-1 for the field amplitudes throughout.
struct AllenEberlyScheme {
    double delta0;      ///< mismatch amplitude, mm^-1
    double kappa0;      ///< coupling amplitude, mm^-1
    double half_length; ///< L, mm

    /// Validates delta0 > 0, kappa0 > 0, half_length > 0.
    AllenEberlyScheme(double delta0, double kappa0, double half_length);
};

/// Choice of counterdiabatic drive added on top of the bare coupler:
/// none, the exact theta_dot/2 term, or a Gaussian stand-in for it.
struct CounterdiabaticSpec {
    enum class Kind { None, Exact, Gaussian };

    Kind kind = Kind::None;
    double amplitude = 0.0; ///< Gaussian peak, mm^-1 (Gaussian kind only)
    double width_z0 = 0.0;  ///< Gaussian width, mm (Gaussian kind only)

    static CounterdiabaticSpec none() { return {}; }
    static CounterdiabaticSpec exact() { return {Kind::Exact, 0.0, 0.0}; }
    /// Validates amplitude > 0 and width_z0 > 0.
    static CounterdiabaticSpec gaussian(double amplitude, double width_z0);
};

/// Largest tolerated Gaussian tail at the device ends, as a fraction of the
/// peak: exp(-(L/z0)^2) must not exceed this. Keeps the added coupling
/// negligible at the boundary so the transformed bases agree there. The
/// exact theta_dot/2 term itself only decays to sech(2 pi) ~ 3.7e-3 of its
/// center value, which sets the scale for this bound.
inline constexpr double kGaussianBoundaryLeak = 1e-2;

/// Default Gaussian width as a fraction of L. Calibrated so the Gaussian
/// shortcut reproduces the reference transfer curves (near-complete switching
/// at 2L = 4 mm for delta0 = kappa0 = 1 mm^-1) while keeping the boundary
/// leak within kGaussianBoundaryLeak.
inline constexpr double kDefaultGaussianWidthFactor = 0.43;

/// Throws std::invalid_argument if a Gaussian spec leaks more than
/// kGaussianBoundaryLeak of its peak at |z| = L. Other kinds always pass.
void validate(const CounterdiabaticSpec& spec, const AllenEberlyScheme& scheme);

/// z0 = kDefaultGaussianWidthFactor * L.
double default_gaussian_width(const AllenEberlyScheme& scheme);

/// Gaussian spec with amplitude kappa0 and the default width.
CounterdiabaticSpec default_gaussian(const AllenEberlyScheme& scheme);

/// Delta(z) = delta0 * tanh(2 pi z / L). Odd in z.
double mismatch_at(const AllenEberlyScheme& scheme, double z);

/// kappa(z) = kappa0 * sech(2 pi z / L). Even in z, strictly positive.
double coupling_at(const AllenEberlyScheme& scheme, double z);

/// Mixing angle theta(z) = atan2(kappa, Delta), continuous in (0, pi),
/// sweeping from near pi at z = -L to near 0 at z = +L.
/// Throws DegenerateFieldError if both fields vanish.
double mixing_angle(const AllenEberlyScheme& scheme, double z);

/// Closed-form d(theta)/dz:
///   theta_dot = -(2 pi / L) delta0 kappa0 sech(u)
///               / (delta0^2 tanh^2 u + kappa0^2 sech^2 u),  u = 2 pi z / L.
/// Even in z and negative everywhere (theta decreases).
double mixing_angle_rate(const AllenEberlyScheme& scheme, double z);

/// Closed-form d^2(theta)/dz^2, used for the exact-mode phase rate.
double mixing_angle_accel(const AllenEberlyScheme& scheme, double z);

/// The added coupling kappa_a(z): 0 for None, theta_dot/2 (signed) for
/// Exact, amplitude * exp(-z^2/z0^2) for Gaussian.
double cd_coupling(const CounterdiabaticSpec& spec, const AllenEberlyScheme& scheme, double z);

/// d(kappa_a)/dz, closed form for every kind.
double cd_coupling_rate(const CounterdiabaticSpec& spec, const AllenEberlyScheme& scheme, double z);

/// Polar form of the complex coupling kappa + i kappa_a = kappa_eff e^{i phi}
/// and the diagonal correction it induces: delta_eff = Delta - phi_dot / 2.
struct EffectiveQuantities {
    double kappa_eff;
    double phi;
    double phi_dot;
    double delta_eff;
};

/// Evaluates kappa_eff, phi, phi_dot, delta_eff at z. phi_dot is analytic
/// for every kind. Throws DegenerateFieldError if kappa_eff vanishes.
EffectiveQuantities effective_quantities(const AllenEberlyScheme& scheme,
                                         const CounterdiabaticSpec& spec, double z);

/// All z-dependent scalar fields at one point.
struct ProfileSample {
    double z;
    double delta;
    double kappa;
    double kappa_a;
    double theta;
    double theta_dot;
    double kappa_eff;
    double phi;
    double phi_dot;
    double delta_eff;
};

ProfileSample profile_sample(const AllenEberlyScheme& scheme,
                             const CounterdiabaticSpec& spec, double z);

std::string to_string(CounterdiabaticSpec::Kind kind);

} // namespace aecoupler
