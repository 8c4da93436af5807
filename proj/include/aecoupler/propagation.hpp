#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "aecoupler/errors.hpp"
#include "aecoupler/hamiltonian.hpp"
#include "aecoupler/matrix2.hpp"
#include "aecoupler/scheme.hpp"

namespace aecoupler {

/// Defect beyond which a conserved quantity (norm, trace, purity) is
/// considered drifted and the run aborts.
inline constexpr double kDriftTolerance = 1e-6;

/// Modal amplitudes of the two waveguides.
struct Amplitudes {
    Complex a1{1.0, 0.0};
    Complex a2{0.0, 0.0};

    double norm_sq() const { return std::norm(a1) + std::norm(a2); }

    /// Unit input power in waveguide 1.
    static Amplitudes input_port() { return {Complex(1.0), Complex(0.0)}; }
    static Amplitudes from_vector(const Vector2c& v) { return {v[0], v[1]}; }
};

/// 2x2 density matrix; diagonal entries are the waveguide powers.
struct DensityMatrix2 {
    Matrix2c m;

    double p1() const { return m.a11.real(); }
    double p2() const { return m.a22.real(); }
    Complex coherence() const { return m.a12; }
    double trace() const { return m.trace().real(); }
    double purity() const {
        return p1() * p1() + p2() * p2() + 2.0 * std::norm(m.a12);
    }
    double hermiticity_defect() const {
        return std::max(std::abs(m.a12 - std::conj(m.a21)),
                        std::max(std::abs(m.a11.imag()), std::abs(m.a22.imag())));
    }

    static DensityMatrix2 pure(const Amplitudes& a) {
        return {{a.a1 * std::conj(a.a1), a.a1 * std::conj(a.a2),
                 a.a2 * std::conj(a.a1), a.a2 * std::conj(a.a2)}};
    }
    static DensityMatrix2 input_port() { return pure(Amplitudes::input_port()); }
    static DensityMatrix2 maximally_mixed() {
        return {{Complex(0.5), Complex(0.0), Complex(0.0), Complex(0.5)}};
    }
};

/// Uniform z-grid: step_count steps of size (z_end - z_start) / step_count,
/// with every stride-th state recorded (stride must divide step_count).
struct ZGrid {
    double z_start;
    double z_end;
    std::size_t step_count;
    std::size_t stride;

    ZGrid(double z_start, double z_end, std::size_t step_count, std::size_t stride = 1);

    static ZGrid with_step_count(double z_start, double z_end, std::size_t step_count,
                                 std::size_t stride = 1) {
        return {z_start, z_end, step_count, stride};
    }
    /// Smallest step count whose step does not exceed h_max; records only
    /// endpoints unless full_record is set.
    static ZGrid with_max_step(double z_start, double z_end, double h_max,
                               bool full_record = true);

    double step() const { return (z_end - z_start) / static_cast<double>(step_count); }
    double z_at(std::size_t i) const {
        return z_start + (z_end - z_start) * static_cast<double>(i) / static_cast<double>(step_count);
    }
    std::size_t sample_count() const { return step_count / stride + 1; }
};

/// Default integration grid for a coupler: 4096 steps across [-L, +L].
ZGrid default_grid(const AllenEberlyScheme& scheme, std::size_t stride = 1);
inline constexpr std::size_t kDefaultStepCount = 4096;

struct TrajectorySample {
    double z;
    double p1;
    double p2;
    double re_coherence;
    double im_coherence;
};

/// Sampled power evolution along z plus conservation diagnostics
/// accumulated over every integration step.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    double max_norm_defect = 0.0;       ///< max |norm or trace - 1|
    double max_purity_defect = 0.0;     ///< density runs only
    double max_hermiticity_defect = 0.0; ///< density runs only
    std::string representation;         ///< "amplitudes" or "density"

    double final_p2() const { return samples.back().p2; }
};

struct AmplitudesRun {
    Trajectory trajectory;
    Amplitudes final_state;
};

struct DensityRun {
    Trajectory trajectory;
    DensityMatrix2 final_state;
};

namespace detail {

inline Amplitudes deriv(const Matrix2c& h, const Amplitudes& a) {
    const Complex minus_i(0.0, -1.0);
    return {minus_i * (h.a11 * a.a1 + h.a12 * a.a2),
            minus_i * (h.a21 * a.a1 + h.a22 * a.a2)};
}

inline Amplitudes add_scaled(const Amplitudes& a, double s, const Amplitudes& b) {
    return {a.a1 + s * b.a1, a.a2 + s * b.a2};
}

inline Matrix2c liouville(const Matrix2c& h, const Matrix2c& rho) {
    return Complex(0.0, -1.0) * commutator(h, rho);
}

} // namespace detail

/// Classical fixed-step 4th-order integration of i da/dz = H(z) a.
/// Throws NormDriftError if |norm^2 - 1| exceeds kDriftTolerance anywhere.
template <class HFn>
AmplitudesRun propagate_amplitudes(HFn&& h_of_z, const Amplitudes& initial, const ZGrid& grid) {
    using detail::add_scaled;
    using detail::deriv;

    AmplitudesRun run;
    run.trajectory.representation = "amplitudes";
    run.trajectory.samples.reserve(grid.sample_count());

    Amplitudes a = initial;
    const double h = grid.step();

    auto check_and_maybe_record = [&](std::size_t i) {
        const double defect = std::abs(a.norm_sq() - 1.0);
        if (defect > run.trajectory.max_norm_defect) run.trajectory.max_norm_defect = defect;
        if (defect > kDriftTolerance) {
            throw NormDriftError("amplitude norm drifted by " + std::to_string(defect) +
                                 " at z = " + std::to_string(grid.z_at(i)) +
                                 "; reduce the step");
        }
        if (i % grid.stride == 0) {
            const Complex coh = a.a1 * std::conj(a.a2);
            run.trajectory.samples.push_back(
                {grid.z_at(i), std::norm(a.a1), std::norm(a.a2), coh.real(), coh.imag()});
        }
    };

    check_and_maybe_record(0);
    for (std::size_t i = 0; i < grid.step_count; ++i) {
        const double z = grid.z_at(i);
        const Matrix2c h_lo = h_of_z(z);
        const Matrix2c h_mid = h_of_z(z + 0.5 * h);
        const Matrix2c h_hi = h_of_z(z + h);
        const Amplitudes k1 = deriv(h_lo, a);
        const Amplitudes k2 = deriv(h_mid, add_scaled(a, 0.5 * h, k1));
        const Amplitudes k3 = deriv(h_mid, add_scaled(a, 0.5 * h, k2));
        const Amplitudes k4 = deriv(h_hi, add_scaled(a, h, k3));
        a = {a.a1 + h / 6.0 * (k1.a1 + 2.0 * k2.a1 + 2.0 * k3.a1 + k4.a1),
             a.a2 + h / 6.0 * (k1.a2 + 2.0 * k2.a2 + 2.0 * k3.a2 + k4.a2)};
        check_and_maybe_record(i + 1);
    }

    run.final_state = a;
    return run;
}

/// Same integrator applied to the density form d(rho)/dz = -i [H, rho].
/// Throws TraceDriftError / PurityDriftError when those defects exceed
/// kDriftTolerance. Purity is compared against the initial state's purity,
/// which the exact flow conserves for pure and mixed states alike.
template <class HFn>
DensityRun propagate_density(HFn&& h_of_z, const DensityMatrix2& initial, const ZGrid& grid) {
    using detail::liouville;

    DensityRun run;
    run.trajectory.representation = "density";
    run.trajectory.samples.reserve(grid.sample_count());

    Matrix2c rho = initial.m;
    const double purity0 = initial.purity();
    const double h = grid.step();

    auto check_and_maybe_record = [&](std::size_t i) {
        const DensityMatrix2 d{rho};
        const double trace_defect = std::abs(d.trace() - 1.0);
        const double purity_defect = std::abs(d.purity() - purity0);
        const double herm_defect = d.hermiticity_defect();
        auto& t = run.trajectory;
        if (trace_defect > t.max_norm_defect) t.max_norm_defect = trace_defect;
        if (purity_defect > t.max_purity_defect) t.max_purity_defect = purity_defect;
        if (herm_defect > t.max_hermiticity_defect) t.max_hermiticity_defect = herm_defect;
        if (trace_defect > kDriftTolerance) {
            throw TraceDriftError("density trace drifted by " + std::to_string(trace_defect) +
                                  " at z = " + std::to_string(grid.z_at(i)) +
                                  "; reduce the step");
        }
        if (purity_defect > kDriftTolerance) {
            throw PurityDriftError("purity drifted by " + std::to_string(purity_defect) +
                                   " at z = " + std::to_string(grid.z_at(i)) +
                                   "; reduce the step");
        }
        if (i % grid.stride == 0) {
            t.samples.push_back({grid.z_at(i), d.p1(), d.p2(),
                                 d.coherence().real(), d.coherence().imag()});
        }
    };

    check_and_maybe_record(0);
    for (std::size_t i = 0; i < grid.step_count; ++i) {
        const double z = grid.z_at(i);
        const Matrix2c h_lo = h_of_z(z);
        const Matrix2c h_mid = h_of_z(z + 0.5 * h);
        const Matrix2c h_hi = h_of_z(z + h);
        const Matrix2c k1 = liouville(h_lo, rho);
        const Matrix2c k2 = liouville(h_mid, rho + (0.5 * h) * k1);
        const Matrix2c k3 = liouville(h_mid, rho + (0.5 * h) * k2);
        const Matrix2c k4 = liouville(h_hi, rho + h * k3);
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_and_maybe_record(i + 1);
    }

    run.final_state = DensityMatrix2{rho};
    return run;
}

/// Waveguide powers if the state tracks the adiabatic supermode connected to
/// the waveguide-1 input: P1 = sin^2(theta/2), P2 = cos^2(theta/2).
struct PowerPrediction {
    double p1;
    double p2;
};
PowerPrediction adiabatic_following_prediction(const AllenEberlyScheme& scheme, double z);

/// Empirical convergence order from final P2 at steps h, h/2 and h/4:
/// log2(|e_h - e_{h/2}| / |e_{h/2} - e_{h/4}|). Returns nullopt when both
/// successive differences sit below 10x machine epsilon (already converged,
/// order indeterminate).
template <class HFn>
std::optional<double> convergence_order(HFn&& h_of_z, const Amplitudes& initial,
                                        const ZGrid& grid) {
    double p[3];
    for (int k = 0; k < 3; ++k) {
        const std::size_t n = grid.step_count << k;
        const ZGrid refined(grid.z_start, grid.z_end, n, n);
        p[k] = propagate_amplitudes(h_of_z, initial, refined).trajectory.final_p2();
    }
    const double d1 = std::abs(p[0] - p[1]);
    const double d2 = std::abs(p[1] - p[2]);
    const double floor = 10.0 * std::numeric_limits<double>::epsilon();
    if (d1 < floor && d2 < floor) return std::nullopt;
    return std::log2(d1 / d2);
}

} // namespace aecoupler
