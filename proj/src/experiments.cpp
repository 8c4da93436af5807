#include "aecoupler/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "aecoupler/hamiltonian.hpp"

namespace aecoupler {

namespace {

// Runs fn(0..count-1) on up to `jobs` threads. Work items only write their
// own slot, so the result is independent of scheduling.
void parallel_for_index(std::size_t count, unsigned jobs,
                        const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(jobs, count));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::optional<double> guarded_final_transfer(double delta0, double kappa0, double half_length,
                                             CouplerMode mode, std::size_t step_count,
                                             const CdOverrides& overrides) {
    try {
        return final_transfer(AllenEberlyScheme(delta0, kappa0, half_length), mode, step_count,
                              overrides);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace

std::string to_string(CouplerMode mode) {
    switch (mode) {
    case CouplerMode::Adiabatic: return "adiabatic";
    case CouplerMode::StaExact: return "sta-exact";
    case CouplerMode::StaGauss: return "sta-gauss";
    }
    return "unknown";
}

std::optional<CouplerMode> parse_mode(const std::string& name) {
    if (name == "adiabatic") return CouplerMode::Adiabatic;
    if (name == "sta-exact") return CouplerMode::StaExact;
    if (name == "sta-gauss") return CouplerMode::StaGauss;
    return std::nullopt;
}

CounterdiabaticSpec cd_spec_for(CouplerMode mode, const AllenEberlyScheme& scheme,
                                const CdOverrides& overrides) {
    switch (mode) {
    case CouplerMode::Adiabatic:
        return CounterdiabaticSpec::none();
    case CouplerMode::StaExact:
        return CounterdiabaticSpec::exact();
    case CouplerMode::StaGauss: {
        auto spec = CounterdiabaticSpec::gaussian(
            overrides.amplitude.value_or(scheme.kappa0),
            overrides.width_z0.value_or(default_gaussian_width(scheme)));
        validate(spec, scheme);
        return spec;
    }
    }
    throw std::invalid_argument("unknown coupler mode");
}

HermitianMatrix2 CouplerHamiltonian::operator()(double z) const {
    return effective_hamiltonian(scheme, spec, z);
}

Trajectory power_trace(const AllenEberlyScheme& scheme, CouplerMode mode, const ZGrid& grid,
                       const CdOverrides& overrides) {
    const CouplerHamiltonian h{scheme, cd_spec_for(mode, scheme, overrides)};
    return propagate_density(h, DensityMatrix2::input_port(), grid).trajectory;
}

double final_transfer(const AllenEberlyScheme& scheme, CouplerMode mode,
                      std::size_t step_count, const CdOverrides& overrides) {
    const ZGrid grid(-scheme.half_length, scheme.half_length, step_count, step_count);
    return power_trace(scheme, mode, grid, overrides).final_p2();
}

SweepGrid SweepGrid::linear(double delta0, double kappa0_min, double kappa0_max,
                            std::size_t kappa0_count, double half_length_min,
                            double half_length_max, std::size_t half_length_count) {
    if (kappa0_count < 1 || half_length_count < 1) {
        throw std::invalid_argument("sweep axes need at least one point");
    }
    if (!(kappa0_min > 0.0) || !(half_length_min > 0.0) ||
        kappa0_max < kappa0_min || half_length_max < half_length_min) {
        throw std::invalid_argument("sweep ranges must be positive and ascending");
    }
    SweepGrid grid{delta0, {}, {}};
    auto fill = [](std::vector<double>& axis, double lo, double hi, std::size_t n) {
        axis.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            axis.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                                  static_cast<double>(n - 1));
        }
    };
    fill(grid.kappa0, kappa0_min, kappa0_max, kappa0_count);
    fill(grid.half_length, half_length_min, half_length_max, half_length_count);
    return grid;
}

std::vector<SweepResult::OrderingViolation>
SweepResult::ordering_violations(double margin) const {
    std::vector<OrderingViolation> out;
    std::size_t i_ad = modes.size(), i_sg = modes.size();
    for (std::size_t m = 0; m < modes.size(); ++m) {
        if (modes[m] == CouplerMode::Adiabatic) i_ad = m;
        if (modes[m] == CouplerMode::StaGauss) i_sg = m;
    }
    if (i_ad == modes.size() || i_sg == modes.size()) return out;
    for (std::size_t ik = 0; ik < grid.kappa0.size(); ++ik) {
        for (std::size_t il = 0; il < grid.half_length.size(); ++il) {
            const auto ad = cell(i_ad, ik, il);
            const auto sg = cell(i_sg, ik, il);
            if (ad && sg && *sg < *ad - margin) {
                out.push_back({ik, il, *ad, *sg});
            }
        }
    }
    return out;
}

SweepResult sweep_kappa_length(const SweepGrid& grid, std::vector<CouplerMode> modes,
                               unsigned jobs, std::size_t step_count,
                               const CdOverrides& overrides) {
    SweepResult result{grid, std::move(modes), {}};
    const std::size_t cells = grid.kappa0.size() * grid.half_length.size();
    result.transfer.assign(result.modes.size(), std::vector<std::optional<double>>(cells));

    const std::size_t total = result.modes.size() * cells;
    parallel_for_index(total, jobs, [&](std::size_t index) {
        const std::size_t m = index / cells;
        const std::size_t c = index % cells;
        const std::size_t ik = c / grid.half_length.size();
        const std::size_t il = c % grid.half_length.size();
        result.transfer[m][c] =
            guarded_final_transfer(grid.delta0, grid.kappa0[ik], grid.half_length[il],
                                   result.modes[m], step_count, overrides);
    });
    return result;
}

std::vector<EfficiencyCurve> efficiency_curves(double delta0, double kappa0,
                                               const std::vector<double>& two_lengths,
                                               const std::vector<CouplerMode>& modes,
                                               unsigned jobs, std::size_t step_count,
                                               const CdOverrides& overrides) {
    if (two_lengths.empty()) {
        throw std::invalid_argument("efficiency curve needs at least one length");
    }
    for (std::size_t i = 0; i < two_lengths.size(); ++i) {
        if (!(two_lengths[i] > 0.0) || (i > 0 && two_lengths[i] <= two_lengths[i - 1])) {
            throw std::invalid_argument("lengths must be positive and strictly ascending");
        }
    }

    std::vector<EfficiencyCurve> curves(modes.size());
    for (std::size_t m = 0; m < modes.size(); ++m) {
        curves[m].mode = modes[m];
        curves[m].points.resize(two_lengths.size());
    }
    const std::size_t total = modes.size() * two_lengths.size();
    parallel_for_index(total, jobs, [&](std::size_t index) {
        const std::size_t m = index / two_lengths.size();
        const std::size_t i = index % two_lengths.size();
        const double two_l = two_lengths[i];
        const auto value = guarded_final_transfer(delta0, kappa0, 0.5 * two_l, modes[m],
                                                  step_count, overrides);
        curves[m].points[i] = {two_l, value.value_or(std::nan(""))};
    });
    return curves;
}

std::optional<double> minimum_switch_length(double delta0, double kappa0, CouplerMode mode,
                                            const MinLengthSearch& search) {
    if (!(search.threshold > 0.0) || !(search.threshold < 1.0)) {
        throw std::invalid_argument("threshold must lie in (0, 1)");
    }
    auto transfer = [&](double two_l) {
        return final_transfer(AllenEberlyScheme(delta0, kappa0, 0.5 * two_l), mode,
                              search.step_count);
    };

    // A zero-length device transfers nothing, so the bracket below any first
    // crossing always opens at the previous scan point.
    double below = 0.0;
    double above = 0.0;
    bool found = false;
    for (double two_l = search.coarse_step; two_l <= search.two_length_max + 1e-12;
         two_l += search.coarse_step) {
        if (transfer(two_l) >= search.threshold) {
            above = two_l;
            found = true;
            break;
        }
        below = two_l;
    }
    if (!found) return std::nullopt;

    while (above - below > search.resolution) {
        const double mid = 0.5 * (below + above);
        if (transfer(mid) >= search.threshold) {
            above = mid;
        } else {
            below = mid;
        }
    }
    return above;
}

std::vector<ProfileSample> profile_report(const AllenEberlyScheme& scheme,
                                          const CounterdiabaticSpec& spec,
                                          std::size_t sample_count) {
    if (sample_count < 2) {
        throw std::invalid_argument("profile needs at least two samples");
    }
    validate(spec, scheme);
    std::vector<ProfileSample> samples;
    samples.reserve(sample_count);
    const double l = scheme.half_length;
    for (std::size_t i = 0; i < sample_count; ++i) {
        const double z = -l + 2.0 * l * static_cast<double>(i) /
                                  static_cast<double>(sample_count - 1);
        samples.push_back(profile_sample(scheme, spec, z));
    }
    return samples;
}

Table serialize_trajectory(const Trajectory& trajectory) {
    Table table({"z_mm", "P1", "P2", "re_rho12", "im_rho12"});
    for (const auto& s : trajectory.samples) {
        table.start_row();
        table.push(s.z);
        table.push(s.p1);
        table.push(s.p2);
        table.push(s.re_coherence);
        table.push(s.im_coherence);
    }
    return table;
}

Table serialize_profile(const std::vector<ProfileSample>& samples) {
    Table table({"z_mm", "delta_per_mm", "kappa_per_mm", "kappa_a_per_mm", "theta_rad",
                 "theta_dot_rad_per_mm", "kappa_eff_per_mm", "phi_rad", "phi_dot_rad_per_mm",
                 "delta_eff_per_mm"});
    for (const auto& s : samples) {
        table.start_row();
        table.push(s.z);
        table.push(s.delta);
        table.push(s.kappa);
        table.push(s.kappa_a);
        table.push(s.theta);
        table.push(s.theta_dot);
        table.push(s.kappa_eff);
        table.push(s.phi);
        table.push(s.phi_dot);
        table.push(s.delta_eff);
    }
    return table;
}

Table serialize_sweep(const SweepResult& result) {
    std::vector<std::string> columns{"kappa0_per_mm", "two_L_mm"};
    for (const auto mode : result.modes) {
        std::string name = "transfer_" + to_string(mode);
        for (auto& c : name) {
            if (c == '-') c = '_';
        }
        columns.push_back(name);
    }
    Table table(std::move(columns));
    for (std::size_t ik = 0; ik < result.grid.kappa0.size(); ++ik) {
        for (std::size_t il = 0; il < result.grid.half_length.size(); ++il) {
            table.start_row();
            table.push(result.grid.kappa0[ik]);
            table.push(2.0 * result.grid.half_length[il]);
            for (std::size_t m = 0; m < result.modes.size(); ++m) {
                table.push(result.cell(m, ik, il));
            }
        }
    }
    return table;
}

Table serialize_efficiency(const std::vector<EfficiencyCurve>& curves) {
    std::vector<std::string> columns{"two_L_mm"};
    for (const auto& curve : curves) {
        std::string name = "efficiency_" + to_string(curve.mode);
        for (auto& c : name) {
            if (c == '-') c = '_';
        }
        columns.push_back(name);
    }
    Table table(std::move(columns));
    if (curves.empty()) return table;
    for (std::size_t i = 0; i < curves.front().points.size(); ++i) {
        table.start_row();
        table.push(curves.front().points[i].two_length);
        for (const auto& curve : curves) {
            const double e = curve.points[i].efficiency;
            if (std::isnan(e)) {
                table.push(std::optional<double>{});
            } else {
                table.push(e);
            }
        }
    }
    return table;
}

} // namespace aecoupler
