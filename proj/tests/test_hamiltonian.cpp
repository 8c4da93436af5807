#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle_values.hpp"

#include "aecoupler/errors.hpp"
#include "aecoupler/hamiltonian.hpp"
#include "aecoupler/propagation.hpp"

using namespace aecoupler;

namespace {

const AllenEberlyScheme kReference(1.0, 1.0, 2.0);

std::vector<double> z_grid(const AllenEberlyScheme& s, std::size_t n) {
    std::vector<double> zs;
    for (std::size_t i = 0; i < n; ++i) {
        zs.push_back(-s.half_length +
                     2.0 * s.half_length * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return zs;
}

std::vector<CounterdiabaticSpec> all_specs(const AllenEberlyScheme& s) {
    return {CounterdiabaticSpec::none(), CounterdiabaticSpec::exact(), default_gaussian(s)};
}

} // namespace

TEST_CASE("diabatic hamiltonian") {
    const auto h = diabatic_hamiltonian(0.0, 1.0);
    CHECK(h.a11 == Complex(0.0));
    CHECK(h.a12 == Complex(1.0));
    CHECK(h.a21 == Complex(1.0));
    CHECK(h.a22 == Complex(0.0));
    const auto ev = eigenvalues(h);
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(-1.0));
    // eigenvectors (1, +-1)/sqrt(2)
    const Vector2c plus{Complex(M_SQRT1_2), Complex(M_SQRT1_2)};
    const auto hp = h * plus;
    CHECK(std::abs(hp[0] - plus[0]) < 1e-15);
    CHECK(std::abs(hp[1] - plus[1]) < 1e-15);

    const auto hd = diabatic_hamiltonian(1.0, 0.0);
    CHECK(hd.a11 == Complex(1.0));
    CHECK(hd.a22 == Complex(-1.0));
    CHECK(hd.a12 == Complex(0.0));

    CHECK(is_traceless(diabatic_hamiltonian(0.37, -2.2)));
}

TEST_CASE("counterdiabatic hamiltonian") {
    CHECK(max_abs_entry(cd_hamiltonian(0.0)) == 0.0);

    const auto h = cd_hamiltonian(-M_PI);
    CHECK(h.a12 == Complex(0.0, M_PI / 2));
    CHECK(h.a21 == Complex(0.0, -M_PI / 2));
    CHECK(is_hermitian(h));
    CHECK(is_traceless(h));

    for (double rate : {-3.0, -0.1, 0.25, 2.0}) {
        const auto ev = eigenvalues(cd_hamiltonian(rate));
        CHECK(ev[0] == doctest::Approx(std::abs(rate) / 2).epsilon(1e-14));
        CHECK(ev[1] == doctest::Approx(-std::abs(rate) / 2).epsilon(1e-14));
    }
}

TEST_CASE("effective hamiltonian composition") {
    const auto none = CounterdiabaticSpec::none();
    const auto exact = CounterdiabaticSpec::exact();
    for (double z : z_grid(kReference, 41)) {
        const auto bare = diabatic_hamiltonian(mismatch_at(kReference, z),
                                               coupling_at(kReference, z));
        const auto h_none = effective_hamiltonian(kReference, none, z);
        CHECK(max_abs_entry(h_none - bare) == 0.0);

        const auto h_exact = effective_hamiltonian(kReference, exact, z);
        const auto sum = bare + cd_hamiltonian(mixing_angle_rate(kReference, z));
        CHECK(max_abs_entry(h_exact - sum) < 1e-15);
    }
}

TEST_CASE("effective hamiltonian eigenvalues are +-sqrt(Delta^2 + kappa_eff^2)") {
    for (const auto& spec : all_specs(kReference)) {
        for (double z : z_grid(kReference, 101)) {
            const auto h = effective_hamiltonian(kReference, spec, z);
            const auto eff = effective_quantities(kReference, spec, z);
            const double expected =
                std::hypot(mismatch_at(kReference, z), eff.kappa_eff);
            const auto ev = eigenvalues(h);
            CHECK(ev[0] == doctest::Approx(expected).epsilon(1e-12));
            CHECK(ev[1] == doctest::Approx(-expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("phase rotated hamiltonian") {
    const auto none = CounterdiabaticSpec::none();
    for (double z : z_grid(kReference, 21)) {
        const auto rotated = phase_rotated_hamiltonian(kReference, none, z);
        const auto bare = diabatic_hamiltonian(mismatch_at(kReference, z),
                                               coupling_at(kReference, z));
        CHECK(max_abs_entry(rotated - bare) < 1e-15);
    }

    for (const auto& spec : all_specs(kReference)) {
        for (double z : z_grid(kReference, 101)) {
            const auto h = phase_rotated_hamiltonian(kReference, spec, z);
            CHECK(h.a12.imag() == 0.0);
            CHECK(h.a12 == h.a21);
            CHECK(is_hermitian(h));
            CHECK(is_traceless(h));
        }
    }
}

TEST_CASE("phase rotated and complex forms produce the same populations") {
    // The two generators differ by a diagonal phase relabeling, so their
    // waveguide powers must agree along the whole device.
    const auto spec = default_gaussian(kReference);
    const ZGrid grid(-2.0, 2.0, 2048);
    const auto complex_form = propagate_amplitudes(
        [&](double z) { return effective_hamiltonian(kReference, spec, z); },
        Amplitudes::input_port(), grid);
    const auto rotated_form = propagate_amplitudes(
        [&](double z) { return phase_rotated_hamiltonian(kReference, spec, z); },
        Amplitudes::input_port(), grid);
    for (std::size_t i = 0; i < complex_form.trajectory.samples.size(); ++i) {
        CHECK(complex_form.trajectory.samples[i].p2 ==
              doctest::Approx(rotated_form.trajectory.samples[i].p2).epsilon(5e-9));
    }
}

TEST_CASE("mixing transform") {
    const auto id = mixing_transform(0.0);
    CHECK(max_abs_entry(id.u - Matrix2c::identity()) == 0.0);

    const auto half_turn = mixing_transform(M_PI);
    CHECK(std::abs(half_turn.u.a11) < 1e-15);
    CHECK(half_turn.u.a12 == Complex(-1.0));
    CHECK(half_turn.u.a21 == Complex(1.0));

    for (double theta : {0.0, 0.3, 1.0, 2.0, M_PI}) {
        CHECK(is_unitary(mixing_transform(theta).u));
    }
}

TEST_CASE("transform with identity leaves the operator alone") {
    const auto h = diabatic_hamiltonian(0.4, 1.3);
    const auto out = transform_hamiltonian(h, {Matrix2c::identity(), Matrix2c::zero()});
    CHECK(max_abs_entry(out - h) < 1e-15);
}

TEST_CASE("instantaneous mixing transform diagonalizes the diabatic form") {
    for (double z : z_grid(kReference, 41)) {
        const double delta = mismatch_at(kReference, z);
        const double kappa = coupling_at(kReference, z);
        const double theta = mixing_angle(kReference, z);
        const auto out =
            transform_hamiltonian(diabatic_hamiltonian(delta, kappa), mixing_transform(theta));
        const double split = std::hypot(delta, kappa);
        CHECK(std::abs(out.a11 - Complex(split)) < 1e-10);
        CHECK(std::abs(out.a22 - Complex(-split)) < 1e-10);
        CHECK(std::abs(out.a12) < 1e-10);
        CHECK(std::abs(out.a21) < 1e-10);
    }
}

TEST_CASE("the rotating frame picks up the +-i theta_dot/2 coupling") {
    for (double z : z_grid(kReference, 41)) {
        const double delta = mismatch_at(kReference, z);
        const double kappa = coupling_at(kReference, z);
        const double theta = mixing_angle(kReference, z);
        const double rate = mixing_angle_rate(kReference, z);

        const auto out = transform_hamiltonian(diabatic_hamiltonian(delta, kappa),
                                               mixing_transform_with_rate(theta, rate));
        const double split = std::hypot(delta, kappa);
        CHECK(std::abs(out.a11 - Complex(split)) < 1e-10);
        CHECK(std::abs(out.a22 - Complex(-split)) < 1e-10);
        CHECK(std::abs(out.a12 - Complex(0.0, 0.5 * rate)) < 1e-10);
        CHECK(std::abs(out.a21 - Complex(0.0, -0.5 * rate)) < 1e-10);
        CHECK(is_hermitian(out, 1e-10));
    }
}

TEST_CASE("the exact drive cancels the rotating-frame coupling entirely") {
    // Transforming bare + exact-drive into the instantaneous eigenbasis must
    // leave a purely diagonal generator: the added term nulls the coupling
    // the rotation introduces.
    const auto exact = CounterdiabaticSpec::exact();
    for (double z : z_grid(kReference, 41)) {
        const double theta = mixing_angle(kReference, z);
        const double rate = mixing_angle_rate(kReference, z);
        const auto h = effective_hamiltonian(kReference, exact, z);
        const auto framed = transform_hamiltonian(h, mixing_transform_with_rate(theta, rate));
        const double split = std::hypot(mismatch_at(kReference, z), coupling_at(kReference, z));
        CHECK(std::abs(framed.a12) < 1e-12);
        CHECK(std::abs(framed.a21) < 1e-12);
        CHECK(std::abs(framed.a11 - Complex(split)) < 1e-12);
        CHECK(std::abs(framed.a22 + Complex(split)) < 1e-12);
    }
}

TEST_CASE("analytic transform derivative matches a finite-difference path") {
    const double z = 0.37;
    const double h = 1e-6;
    const double theta = mixing_angle(kReference, z);
    const double rate = mixing_angle_rate(kReference, z);
    const auto u_plus = mixing_transform(mixing_angle(kReference, z + h)).u;
    const auto u_minus = mixing_transform(mixing_angle(kReference, z - h)).u;
    const auto du_fd = (1.0 / (2.0 * h)) * (u_plus - u_minus);
    const auto basis = mixing_transform_with_rate(theta, rate);
    CHECK(max_abs_entry(basis.du - du_fd) < 1e-8);
}

TEST_CASE("non-unitary transforms are rejected") {
    auto basis = mixing_transform(0.7);
    basis.u.a11 *= 1.1;
    CHECK_THROWS_AS(transform_hamiltonian(diabatic_hamiltonian(1.0, 1.0), basis),
                    NonUnitaryError);
}

TEST_CASE("adiabaticity ratio") {
    CHECK(adiabaticity_ratio(kReference, 0.0) == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK(adiabaticity_ratio(AllenEberlyScheme(1, 1, 10), 0.0) ==
          doctest::Approx(M_PI / 10).epsilon(1e-14));

    // At the center the ratio is pi d0 / (L k0^2): doubling kappa0 quarters it.
    const double base = adiabaticity_ratio(AllenEberlyScheme(1, 1, 2), 0.0);
    const double doubled = adiabaticity_ratio(AllenEberlyScheme(1, 2, 2), 0.0);
    CHECK(doubled == doctest::Approx(base / 4).epsilon(1e-13));
}

TEST_CASE("peak adiabaticity ratio falls as the device grows") {
    double prev = 1e30;
    for (double l : {2.0, 4.0, 8.0, 16.0}) {
        const AllenEberlyScheme s(1.0, 1.0, l);
        double peak = 0.0;
        for (double z : z_grid(s, 2001)) {
            peak = std::max(peak, adiabaticity_ratio(s, z));
        }
        CHECK(peak < prev);
        prev = peak;
    }
}

TEST_CASE("every constructed operator is hermitian and traceless") {
    for (const auto& spec : all_specs(kReference)) {
        for (double z : z_grid(kReference, 101)) {
            for (const auto& h : {effective_hamiltonian(kReference, spec, z),
                                  phase_rotated_hamiltonian(kReference, spec, z)}) {
                CHECK(is_hermitian(h, 1e-12));
                CHECK(is_traceless(h, 1e-12));
            }
        }
    }
}

TEST_CASE("input supermode is the lower eigenvector and joins waveguide 1") {
    for (double z : z_grid(kReference, 21)) {
        const double theta = mixing_angle(kReference, z);
        const auto v = input_supermode(theta);
        const auto h = diabatic_hamiltonian(mismatch_at(kReference, z),
                                            coupling_at(kReference, z));
        const auto hv = h * v;
        const double lambda = eigenvalues(h)[1];
        CHECK(std::abs(hv[0] - lambda * v[0]) < 1e-13);
        CHECK(std::abs(hv[1] - lambda * v[1]) < 1e-13);
    }
    const auto near_input = input_supermode(mixing_angle(kReference, -2.0));
    CHECK(std::norm(near_input[0]) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(std::norm(near_input[1]) == doctest::Approx(oracle::kSupermodeP2Start).epsilon(1e-9));
}
