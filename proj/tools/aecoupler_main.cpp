// Command-line front end for the coupler experiments: spatial profiles,
// power traces, kappa0 x length sweeps, efficiency curves and minimum
// switching lengths. Data goes to CSV files with a key=value metadata
// sidecar; progress and errors go to stderr.

#include <cmath>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aecoupler/experiments.hpp"
#include "aecoupler/table_io.hpp"
#include "aecoupler/version.hpp"

namespace {

using namespace aecoupler;

constexpr int kExitSuccess = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct OutputOptions {
    std::string out_path;
    bool to_stdout = false;
    bool no_timestamp = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& io) {
    cmd->add_option("--out", io.out_path, "Output CSV path; metadata goes to <path>.meta");
    cmd->add_flag("--stdout", io.to_stdout, "Write the data table to standard output");
    cmd->add_flag("--no-timestamp", io.no_timestamp,
                  "Omit the timestamp from the metadata record");
}

// Writes the table and its metadata sidecar. Data never reaches stdout
// unless --stdout was given.
void emit(const Table& table, MetadataRecord meta, const OutputOptions& io) {
    if (io.out_path.empty() && !io.to_stdout) {
        throw CLI::ValidationError("output", "specify --out <path> and/or --stdout");
    }
    if (!io.no_timestamp) {
        meta.set("timestamp", utc_timestamp());
    }
    const std::string csv = table.to_csv();
    if (!io.out_path.empty()) {
        write_text_file(io.out_path, csv);
        write_text_file(io.out_path + ".meta", meta.to_text());
        std::cerr << "wrote " << io.out_path << " (" << table.row_count() << " rows) and "
                  << io.out_path << ".meta\n";
    }
    if (io.to_stdout) {
        std::cout << csv;
    }
}

struct SchemeOptions {
    double delta0 = 1.0;
    double kappa0 = 1.0;
    double two_length = 4.0;
    std::string mode = "adiabatic";
    std::optional<double> cd_amplitude;
    std::optional<double> z0;
};

void add_scheme_options(CLI::App* cmd, SchemeOptions& opt, bool with_length = true) {
    cmd->add_option("--delta0", opt.delta0, "Mismatch amplitude Delta0 (mm^-1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--kappa0", opt.kappa0, "Coupling amplitude kappa0 (mm^-1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_length) {
        cmd->add_option("--length", opt.two_length, "Total device length 2L (mm)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }
    cmd->add_option("--mode", opt.mode, "Coupler mode")
        ->check(CLI::IsMember({"adiabatic", "sta-exact", "sta-gauss"}))
        ->capture_default_str();
    cmd->add_option("--cd-amplitude", opt.cd_amplitude,
                    "Gaussian drive amplitude (mm^-1, sta-gauss only; default kappa0)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--z0", opt.z0,
                    "Gaussian drive width (mm, sta-gauss only; default 0.43 L)")
        ->check(CLI::PositiveNumber);
}

AllenEberlyScheme scheme_of(const SchemeOptions& opt) {
    return {opt.delta0, opt.kappa0, 0.5 * opt.two_length};
}

CouplerMode mode_of(const SchemeOptions& opt) {
    return *parse_mode(opt.mode);
}

CdOverrides overrides_of(const SchemeOptions& opt) {
    return {opt.cd_amplitude, opt.z0};
}

void describe_scheme(MetadataRecord& meta, const SchemeOptions& opt,
                     const AllenEberlyScheme& scheme) {
    meta.set("delta0_per_mm", scheme.delta0);
    meta.set("kappa0_per_mm", scheme.kappa0);
    meta.set("two_length_mm", 2.0 * scheme.half_length);
    meta.set("mode", opt.mode);
    if (mode_of(opt) == CouplerMode::StaGauss) {
        const auto spec = cd_spec_for(CouplerMode::StaGauss, scheme, overrides_of(opt));
        meta.set("cd_amplitude_per_mm", spec.amplitude);
        meta.set("z0_mm", spec.width_z0);
    }
}

MetadataRecord base_metadata(const std::string& experiment) {
    MetadataRecord meta;
    meta.set("artifact", "aecoupler");
    meta.set("version", kVersion);
    meta.set("experiment", experiment);
    return meta;
}

std::vector<CouplerMode> parse_modes(const std::vector<std::string>& names) {
    std::vector<CouplerMode> modes;
    for (const auto& name : names) {
        const auto mode = parse_mode(name);
        if (!mode) {
            throw CLI::ValidationError("--modes", "unknown mode '" + name + "'");
        }
        modes.push_back(*mode);
    }
    return modes;
}

// ---- subcommand bodies -------------------------------------------------

int run_profile(const SchemeOptions& opt, std::size_t samples, const OutputOptions& io) {
    const auto scheme = scheme_of(opt);
    const auto spec = cd_spec_for(mode_of(opt), scheme, overrides_of(opt));
    const auto report = profile_report(scheme, spec, samples);

    auto meta = base_metadata("profile");
    describe_scheme(meta, opt, scheme);
    meta.set("samples", samples);
    emit(serialize_profile(report), std::move(meta), io);
    return kExitSuccess;
}

int run_propagate(const SchemeOptions& opt, std::optional<double> step,
                  const OutputOptions& io) {
    const auto scheme = scheme_of(opt);
    const ZGrid grid = step ? ZGrid::with_max_step(-scheme.half_length, scheme.half_length, *step)
                            : default_grid(scheme);
    const auto trajectory = power_trace(scheme, mode_of(opt), grid, overrides_of(opt));

    auto meta = base_metadata("propagate");
    describe_scheme(meta, opt, scheme);
    meta.set("step_mm", grid.step());
    meta.set("step_count", grid.step_count);
    meta.set("sample_stride", grid.stride);
    meta.set("representation", trajectory.representation);
    meta.set("max_trace_defect", trajectory.max_norm_defect);
    meta.set("max_purity_defect", trajectory.max_purity_defect);
    meta.set("final_fractional_power", trajectory.final_p2());
    emit(serialize_trajectory(trajectory), std::move(meta), io);
    return kExitSuccess;
}

struct SweepOptions {
    double delta0 = 1.0;
    double kappa0_min = 0.2, kappa0_max = 3.0;
    std::size_t kappa0_count = 25;
    double length_min = 1.0, length_max = 24.0; // total device length 2L
    std::size_t length_count = 25;
    std::vector<std::string> modes{"adiabatic", "sta-gauss"};
    std::optional<double> cd_amplitude;
    std::optional<double> z0;
    unsigned jobs = 1;
};

int run_sweep(const SweepOptions& opt, const OutputOptions& io) {
    const auto grid = SweepGrid::linear(opt.delta0, opt.kappa0_min, opt.kappa0_max,
                                        opt.kappa0_count, 0.5 * opt.length_min,
                                        0.5 * opt.length_max, opt.length_count);
    const auto modes = parse_modes(opt.modes);
    const CdOverrides overrides{opt.cd_amplitude, opt.z0};
    const auto result = sweep_kappa_length(grid, modes, opt.jobs, kDefaultStepCount, overrides);

    std::size_t missing = 0;
    for (const auto& per_mode : result.transfer) {
        for (const auto& cell : per_mode) {
            if (!cell) ++missing;
        }
    }
    const auto violations = result.ordering_violations();
    if (!violations.empty()) {
        std::cerr << "note: " << violations.size()
                  << " cell(s) where sta-gauss trails adiabatic by more than 1e-3\n";
    }

    auto meta = base_metadata("sweep");
    meta.set("delta0_per_mm", opt.delta0);
    meta.set("kappa0_min_per_mm", opt.kappa0_min);
    meta.set("kappa0_max_per_mm", opt.kappa0_max);
    meta.set("kappa0_count", opt.kappa0_count);
    meta.set("two_length_min_mm", opt.length_min);
    meta.set("two_length_max_mm", opt.length_max);
    meta.set("two_length_count", opt.length_count);
    std::string mode_list;
    for (const auto& m : opt.modes) {
        if (!mode_list.empty()) mode_list += ',';
        mode_list += m;
    }
    meta.set("modes", mode_list);
    meta.set("step_count_per_cell", kDefaultStepCount);
    meta.set("z0_rule", opt.z0 ? format_number(*opt.z0) + " fixed" : "0.43*L per cell");
    meta.set("cd_amplitude_rule",
             opt.cd_amplitude ? format_number(*opt.cd_amplitude) + " fixed" : "kappa0 per cell");
    meta.set("jobs", static_cast<std::size_t>(opt.jobs));
    meta.set("missing_cells", missing);
    meta.set("ordering_violations", violations.size());
    emit(serialize_sweep(result), std::move(meta), io);
    if (missing > 0) {
        std::cerr << missing << " cell(s) failed and were written as NA\n";
        return kExitRuntime;
    }
    return kExitSuccess;
}

struct EfficiencyOptions {
    double delta0 = 1.0;
    double kappa0 = 1.0;
    double length_min = 0.5, length_max = 20.0;
    std::size_t length_count = 40;
    std::vector<std::string> modes{"adiabatic", "sta-gauss"};
    std::optional<double> cd_amplitude;
    std::optional<double> z0;
    unsigned jobs = 1;
};

int run_efficiency(const EfficiencyOptions& opt, const OutputOptions& io) {
    std::vector<double> lengths;
    lengths.reserve(opt.length_count);
    for (std::size_t i = 0; i < opt.length_count; ++i) {
        lengths.push_back(opt.length_count == 1
                              ? opt.length_min
                              : opt.length_min + (opt.length_max - opt.length_min) *
                                                     static_cast<double>(i) /
                                                     static_cast<double>(opt.length_count - 1));
    }
    const auto modes = parse_modes(opt.modes);
    const CdOverrides overrides{opt.cd_amplitude, opt.z0};
    const auto curves = efficiency_curves(opt.delta0, opt.kappa0, lengths, modes, opt.jobs,
                                          kDefaultStepCount, overrides);

    std::size_t missing = 0;
    for (const auto& curve : curves) {
        for (const auto& point : curve.points) {
            if (std::isnan(point.efficiency)) ++missing;
        }
    }

    auto meta = base_metadata("efficiency");
    meta.set("delta0_per_mm", opt.delta0);
    meta.set("kappa0_per_mm", opt.kappa0);
    meta.set("two_length_min_mm", opt.length_min);
    meta.set("two_length_max_mm", opt.length_max);
    meta.set("two_length_count", opt.length_count);
    meta.set("step_count_per_point", kDefaultStepCount);
    meta.set("z0_rule", opt.z0 ? format_number(*opt.z0) + " fixed" : "0.43*L per point");
    meta.set("cd_amplitude_rule",
             opt.cd_amplitude ? format_number(*opt.cd_amplitude) + " fixed" : "kappa0 per point");
    meta.set("jobs", static_cast<std::size_t>(opt.jobs));
    meta.set("missing_points", missing);
    emit(serialize_efficiency(curves), std::move(meta), io);
    if (missing > 0) {
        std::cerr << missing << " point(s) failed and were written as NA\n";
        return kExitRuntime;
    }
    return kExitSuccess;
}

int run_minlength(const SchemeOptions& opt, double threshold, double lmax,
                  const OutputOptions& io) {
    MinLengthSearch search;
    search.threshold = threshold;
    search.two_length_max = lmax;
    const auto found = minimum_switch_length(opt.delta0, opt.kappa0, mode_of(opt), search);

    Table table({"mode", "threshold", "two_L_mm"});
    table.start_row();
    table.push(opt.mode);
    table.push(threshold);
    table.push(found);

    auto meta = base_metadata("minlength");
    meta.set("delta0_per_mm", opt.delta0);
    meta.set("kappa0_per_mm", opt.kappa0);
    meta.set("mode", opt.mode);
    meta.set("threshold", threshold);
    meta.set("two_length_max_mm", lmax);
    meta.set("resolution_mm", search.resolution);
    meta.set("coarse_step_mm", search.coarse_step);
    meta.set("step_count_per_point", search.step_count);
    meta.set("found", found ? "yes" : "no");
    if (found) {
        meta.set("two_length_mm", *found);
    }
    emit(table, std::move(meta), io);

    if (!found) {
        std::cerr << "not reached: no device length up to " << lmax << " mm transfers "
                  << threshold << " of the input power in mode " << opt.mode << "\n";
        return kExitRuntime;
    }
    std::cerr << "minimum device length 2L = " << *found << " mm\n";
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-waveguide coupler simulator: tanh/sech mismatch-coupling "
                 "profiles with optional counterdiabatic shortcut"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file (flags take precedence)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    SchemeOptions profile_opt;
    std::size_t profile_samples = 501;
    OutputOptions profile_io;
    auto* profile_cmd = app.add_subcommand("profile", "Tabulate the spatial fields");
    add_scheme_options(profile_cmd, profile_opt);
    profile_cmd->add_option("--samples", profile_samples, "Number of z samples")
        ->check(CLI::Range(static_cast<std::size_t>(2), static_cast<std::size_t>(1000000)))
        ->capture_default_str();
    add_output_options(profile_cmd, profile_io);

    SchemeOptions prop_opt;
    std::optional<double> prop_step;
    OutputOptions prop_io;
    auto* prop_cmd = app.add_subcommand("propagate", "Trace the power evolution along z");
    add_scheme_options(prop_cmd, prop_opt);
    prop_cmd->add_option("--step", prop_step, "Integrator step (mm; default 2L/4096)")
        ->check(CLI::PositiveNumber);
    add_output_options(prop_cmd, prop_io);

    SweepOptions sweep_opt;
    OutputOptions sweep_io;
    auto* sweep_cmd = app.add_subcommand("sweep", "Final transfer over a kappa0 x length grid");
    sweep_cmd->add_option("--delta0", sweep_opt.delta0, "Mismatch amplitude (mm^-1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--kappa0-min", sweep_opt.kappa0_min, "Smallest kappa0 (mm^-1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--kappa0-max", sweep_opt.kappa0_max, "Largest kappa0 (mm^-1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--kappa0-count", sweep_opt.kappa0_count, "kappa0 grid points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--length-min", sweep_opt.length_min, "Smallest 2L (mm)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--length-max", sweep_opt.length_max, "Largest 2L (mm)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--length-count", sweep_opt.length_count, "Length grid points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--modes", sweep_opt.modes, "Modes to sweep")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--cd-amplitude", sweep_opt.cd_amplitude,
                          "Fixed Gaussian amplitude for every cell (default: kappa0 per cell)")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--z0", sweep_opt.z0,
                          "Fixed Gaussian width for every cell (default: 0.43 L per cell); "
                          "cells too short for it are written as NA")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--jobs", sweep_opt.jobs, "Worker thread cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(sweep_cmd, sweep_io);

    EfficiencyOptions eff_opt;
    OutputOptions eff_io;
    auto* eff_cmd = app.add_subcommand("efficiency", "Final transfer vs device length");
    eff_cmd->add_option("--delta0", eff_opt.delta0, "Mismatch amplitude (mm^-1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eff_cmd->add_option("--kappa0", eff_opt.kappa0, "Coupling amplitude (mm^-1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eff_cmd->add_option("--length-min", eff_opt.length_min, "Smallest 2L (mm)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eff_cmd->add_option("--length-max", eff_opt.length_max, "Largest 2L (mm)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eff_cmd->add_option("--length-count", eff_opt.length_count, "Length grid points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eff_cmd->add_option("--modes", eff_opt.modes, "Modes to evaluate")
        ->delimiter(',')
        ->capture_default_str();
    eff_cmd->add_option("--cd-amplitude", eff_opt.cd_amplitude,
                        "Fixed Gaussian amplitude for every point (default: kappa0)")
        ->check(CLI::PositiveNumber);
    eff_cmd->add_option("--z0", eff_opt.z0,
                        "Fixed Gaussian width for every point (default: 0.43 L per point)")
        ->check(CLI::PositiveNumber);
    eff_cmd->add_option("--jobs", eff_opt.jobs, "Worker thread cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(eff_cmd, eff_io);

    SchemeOptions min_opt;
    double min_threshold = 0.99;
    double min_lmax = 100.0;
    OutputOptions min_io;
    auto* min_cmd =
        app.add_subcommand("minlength", "Smallest device length reaching a transfer threshold");
    add_scheme_options(min_cmd, min_opt, /*with_length=*/false);
    min_cmd->add_option("--threshold", min_threshold, "Required final fractional power")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12))
        ->capture_default_str();
    min_cmd->add_option("--lmax", min_lmax, "Largest 2L to try (mm)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(min_cmd, min_io);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message to stderr
        return kExitUsage;
    }

    try {
        if (profile_cmd->parsed()) return run_profile(profile_opt, profile_samples, profile_io);
        if (prop_cmd->parsed()) return run_propagate(prop_opt, prop_step, prop_io);
        if (sweep_cmd->parsed()) return run_sweep(sweep_opt, sweep_io);
        if (eff_cmd->parsed()) return run_efficiency(eff_opt, eff_io);
        if (min_cmd->parsed()) return run_minlength(min_opt, min_threshold, min_lmax, min_io);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitSuccess;
}
