#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aecoupler/propagation.hpp"
#include "aecoupler/scheme.hpp"
#include "aecoupler/table_io.hpp"

namespace aecoupler {

/// The three coupler variants compared throughout: bare adiabatic device,
/// exact counterdiabatic drive, Gaussian approximation of it.
enum class CouplerMode { Adiabatic, StaExact, StaGauss };

std::string to_string(CouplerMode mode);
std::optional<CouplerMode> parse_mode(const std::string& name);

/// Optional replacements for the Gaussian defaults (amplitude kappa0,
/// width 0.43 L). Ignored for the other modes.
struct CdOverrides {
    std::optional<double> amplitude;
    std::optional<double> width_z0;
};

/// The counterdiabatic choice a mode stands for, validated against the
/// scheme.
CounterdiabaticSpec cd_spec_for(CouplerMode mode, const AllenEberlyScheme& scheme,
                                const CdOverrides& overrides = {});

/// z -> effective Hamiltonian for one coupler; the provider handed to the
/// integrators.
struct CouplerHamiltonian {
    AllenEberlyScheme scheme;
    CounterdiabaticSpec spec;

    HermitianMatrix2 operator()(double z) const;
};

/// Density-matrix propagation of unit input power across [-L, +L]; sample
/// p2 is the fractional power P2(z)/P1(-L).
Trajectory power_trace(const AllenEberlyScheme& scheme, CouplerMode mode, const ZGrid& grid,
                       const CdOverrides& overrides = {});

/// Final fractional power for one coupler, endpoints-only grid.
double final_transfer(const AllenEberlyScheme& scheme, CouplerMode mode,
                      std::size_t step_count = kDefaultStepCount,
                      const CdOverrides& overrides = {});

/// Axes of the kappa0 x L map at fixed delta0; values ascending.
struct SweepGrid {
    double delta0;
    std::vector<double> kappa0;      ///< mm^-1
    std::vector<double> half_length; ///< L, mm

    static SweepGrid linear(double delta0, double kappa0_min, double kappa0_max,
                            std::size_t kappa0_count, double half_length_min,
                            double half_length_max, std::size_t half_length_count);
};

/// Filled sweep: one final-transfer matrix per mode, row-major over
/// (kappa0 index, half-length index). Cells whose run failed are empty and
/// serialize as NA.
struct SweepResult {
    SweepGrid grid;
    std::vector<CouplerMode> modes;
    std::vector<std::vector<std::optional<double>>> transfer; ///< [mode][ik * nL + il]

    std::optional<double> cell(std::size_t mode_index, std::size_t ik, std::size_t il) const {
        return transfer[mode_index][ik * grid.half_length.size() + il];
    }

    /// Cells where the Gaussian shortcut lands more than `margin` below the
    /// bare adiabatic device. Empty unless both modes were swept.
    struct OrderingViolation {
        std::size_t ik, il;
        double adiabatic;
        double sta_gauss;
    };
    std::vector<OrderingViolation> ordering_violations(double margin = 1e-3) const;
};

/// Runs every (mode, kappa0, L) cell; cells are independent and may be
/// evaluated on up to `jobs` threads, results merged by index so the output
/// never depends on the schedule. Per-cell failures become empty cells;
/// a fixed width override, for instance, is refused for cells too short to
/// contain it and those cells come back empty.
SweepResult sweep_kappa_length(const SweepGrid& grid, std::vector<CouplerMode> modes,
                               unsigned jobs = 1, std::size_t step_count = kDefaultStepCount,
                               const CdOverrides& overrides = {});

struct EfficiencyPoint {
    double two_length; ///< total device length 2L, mm
    double efficiency; ///< final fractional power
};

struct EfficiencyCurve {
    CouplerMode mode;
    std::vector<EfficiencyPoint> points;
};

/// Final fractional power versus total device length, one curve per mode.
/// Lengths must be ascending and positive.
std::vector<EfficiencyCurve> efficiency_curves(double delta0, double kappa0,
                                               const std::vector<double>& two_lengths,
                                               const std::vector<CouplerMode>& modes,
                                               unsigned jobs = 1,
                                               std::size_t step_count = kDefaultStepCount,
                                               const CdOverrides& overrides = {});

struct MinLengthSearch {
    double threshold = 0.99;      ///< required final fractional power
    double two_length_max = 100.0; ///< give up beyond this device length, mm
    double resolution = 1e-3;     ///< bisection resolution on 2L, mm
    double coarse_step = 0.1;     ///< scan step used to bracket the crossing, mm
    std::size_t step_count = kDefaultStepCount;
};

/// Smallest total length 2L whose final transfer reaches the threshold:
/// coarse ascending scan to bracket the first crossing, then bisection to
/// the requested resolution. nullopt when no length up to two_length_max
/// reaches it.
std::optional<double> minimum_switch_length(double delta0, double kappa0, CouplerMode mode,
                                            const MinLengthSearch& search = {});

/// Uniform profile samples across [-L, +L]; sample_count >= 2.
std::vector<ProfileSample> profile_report(const AllenEberlyScheme& scheme,
                                          const CounterdiabaticSpec& spec,
                                          std::size_t sample_count);

// Serialization of experiment outputs. Tables carry a header row; numbers
// are written with 15 significant digits so replays are byte-identical.
Table serialize_trajectory(const Trajectory& trajectory);
Table serialize_profile(const std::vector<ProfileSample>& samples);
Table serialize_sweep(const SweepResult& result);
Table serialize_efficiency(const std::vector<EfficiencyCurve>& curves);

} // namespace aecoupler
