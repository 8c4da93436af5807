#include "aecoupler/scheme.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aecoupler/errors.hpp"

namespace aecoupler {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be positive and finite, got " << value;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

AllenEberlyScheme::AllenEberlyScheme(double delta0_, double kappa0_, double half_length_)
    : delta0(delta0_), kappa0(kappa0_), half_length(half_length_) {
    require_positive(delta0, "delta0");
    require_positive(kappa0, "kappa0");
    require_positive(half_length, "half_length");
}

CounterdiabaticSpec CounterdiabaticSpec::gaussian(double amplitude, double width_z0) {
    require_positive(amplitude, "cd amplitude");
    require_positive(width_z0, "cd width z0");
    return {Kind::Gaussian, amplitude, width_z0};
}

void validate(const CounterdiabaticSpec& spec, const AllenEberlyScheme& scheme) {
    if (spec.kind != CounterdiabaticSpec::Kind::Gaussian) return;
    const double ratio = scheme.half_length / spec.width_z0;
    const double leak = std::exp(-ratio * ratio);
    if (leak > kGaussianBoundaryLeak) {
        std::ostringstream msg;
        msg << "cd width z0 = " << spec.width_z0 << " mm leaves "
            << leak << " of the Gaussian peak at |z| = L = " << scheme.half_length
            << " mm (limit " << kGaussianBoundaryLeak << "); narrow z0";
        throw std::invalid_argument(msg.str());
    }
}

double default_gaussian_width(const AllenEberlyScheme& scheme) {
    return kDefaultGaussianWidthFactor * scheme.half_length;
}

CounterdiabaticSpec default_gaussian(const AllenEberlyScheme& scheme) {
    auto spec = CounterdiabaticSpec::gaussian(scheme.kappa0, default_gaussian_width(scheme));
    validate(spec, scheme);
    return spec;
}

double mismatch_at(const AllenEberlyScheme& scheme, double z) {
    return scheme.delta0 * std::tanh(2.0 * M_PI * z / scheme.half_length);
}

double coupling_at(const AllenEberlyScheme& scheme, double z) {
    return scheme.kappa0 / std::cosh(2.0 * M_PI * z / scheme.half_length);
}

double mixing_angle(const AllenEberlyScheme& scheme, double z) {
    const double kappa = coupling_at(scheme, z);
    const double delta = mismatch_at(scheme, z);
    if (kappa == 0.0 && delta == 0.0) {
        throw DegenerateFieldError("mixing angle undefined: kappa and Delta both vanish");
    }
    return std::atan2(kappa, delta);
}

double mixing_angle_rate(const AllenEberlyScheme& scheme, double z) {
    const double w = 2.0 * M_PI / scheme.half_length;
    const double u = w * z;
    const double s = 1.0 / std::cosh(u);
    const double t = std::tanh(u);
    const double d0 = scheme.delta0;
    const double k0 = scheme.kappa0;
    const double denom = d0 * d0 * t * t + k0 * k0 * s * s;
    return -w * d0 * k0 * s / denom;
}

double mixing_angle_accel(const AllenEberlyScheme& scheme, double z) {
    // theta_dot = N / D with N = -w d0 k0 sech u, D = d0^2 tanh^2 u + k0^2 sech^2 u,
    // so theta_ddot = (N' D - N D') / D^2 with
    //   N' = w^2 d0 k0 sech u tanh u,
    //   D' = 2 w sech^2 u tanh u (d0^2 - k0^2).
    const double w = 2.0 * M_PI / scheme.half_length;
    const double u = w * z;
    const double s = 1.0 / std::cosh(u);
    const double t = std::tanh(u);
    const double d0 = scheme.delta0;
    const double k0 = scheme.kappa0;
    const double n = -w * d0 * k0 * s;
    const double d = d0 * d0 * t * t + k0 * k0 * s * s;
    const double np = w * w * d0 * k0 * s * t;
    const double dp = 2.0 * w * s * s * t * (d0 * d0 - k0 * k0);
    return (np * d - n * dp) / (d * d);
}

double cd_coupling(const CounterdiabaticSpec& spec, const AllenEberlyScheme& scheme, double z) {
    switch (spec.kind) {
    case CounterdiabaticSpec::Kind::None:
        return 0.0;
    case CounterdiabaticSpec::Kind::Exact:
        return 0.5 * mixing_angle_rate(scheme, z);
    case CounterdiabaticSpec::Kind::Gaussian:
        return spec.amplitude * std::exp(-z * z / (spec.width_z0 * spec.width_z0));
    }
    return 0.0;
}

double cd_coupling_rate(const CounterdiabaticSpec& spec, const AllenEberlyScheme& scheme, double z) {
    switch (spec.kind) {
    case CounterdiabaticSpec::Kind::None:
        return 0.0;
    case CounterdiabaticSpec::Kind::Exact:
        return 0.5 * mixing_angle_accel(scheme, z);
    case CounterdiabaticSpec::Kind::Gaussian: {
        const double z0sq = spec.width_z0 * spec.width_z0;
        return spec.amplitude * std::exp(-z * z / z0sq) * (-2.0 * z / z0sq);
    }
    }
    return 0.0;
}

EffectiveQuantities effective_quantities(const AllenEberlyScheme& scheme,
                                         const CounterdiabaticSpec& spec, double z) {
    const double kappa = coupling_at(scheme, z);
    const double kappa_a = cd_coupling(spec, scheme, z);
    const double kappa_eff = std::hypot(kappa, kappa_a);
    if (kappa_eff == 0.0) {
        throw DegenerateFieldError("phase undefined: kappa_eff vanishes");
    }
    const double phi = std::atan2(kappa_a, kappa);
    // phi = atan2(kappa_a, kappa) differentiates to
    // (kappa * kappa_a' - kappa_a * kappa') / kappa_eff^2; both rates have
    // closed forms for every kind.
    const double w = 2.0 * M_PI / scheme.half_length;
    const double u = w * z;
    const double kappa_rate = -w * coupling_at(scheme, z) * std::tanh(u);
    const double kappa_a_rate = cd_coupling_rate(spec, scheme, z);
    const double phi_dot =
        (kappa * kappa_a_rate - kappa_a * kappa_rate) / (kappa_eff * kappa_eff);
    const double delta_eff = mismatch_at(scheme, z) - 0.5 * phi_dot;
    return {kappa_eff, phi, phi_dot, delta_eff};
}

ProfileSample profile_sample(const AllenEberlyScheme& scheme,
                             const CounterdiabaticSpec& spec, double z) {
    const auto eff = effective_quantities(scheme, spec, z);
    return {z,
            mismatch_at(scheme, z),
            coupling_at(scheme, z),
            cd_coupling(spec, scheme, z),
            mixing_angle(scheme, z),
            mixing_angle_rate(scheme, z),
            eff.kappa_eff,
            eff.phi,
            eff.phi_dot,
            eff.delta_eff};
}

std::string to_string(CounterdiabaticSpec::Kind kind) {
    switch (kind) {
    case CounterdiabaticSpec::Kind::None: return "none";
    case CounterdiabaticSpec::Kind::Exact: return "exact";
    case CounterdiabaticSpec::Kind::Gaussian: return "gaussian";
    }
    return "unknown";
}

} // namespace aecoupler
