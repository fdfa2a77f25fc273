// Command-line front end for the concomitant-statistics intrusion detector.
//
// Exit codes: 0 success / intrusion absent, 10 intrusion present,
// 20 interrupt-and-rerun-deterministic, 64 usage, 65 bad input data,
// 66 endpoint information required, 67 degenerate transfer, 70 internal.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "codet/codet.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitEndpointInfo = 66;
constexpr int kExitDegenerate = 67;
constexpr int kExitInternal = 70;

struct ParamFlags {
    codet::TrendParams params;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tail-fraction", params.tail_fraction,
                        "Fraction of defined points in the trend tail window")
            ->capture_default_str();
        cmd->add_option("--half-band", params.half_band,
                        "Half-band: tail deviations above this count as away "
                        "from 1/2")
            ->capture_default_str();
        cmd->add_option("--decisive-band", params.decisive_band,
                        "Deviations at or below this are decisively at 1/2")
            ->capture_default_str();
        cmd->add_option("--growth-hi", params.growth_ratio_hi,
                        "Window ratio at or above which B grows decisively")
            ->capture_default_str();
        cmd->add_option("--growth-lo", params.growth_ratio_lo,
                        "Window ratio at or below which B is bounded")
            ->capture_default_str();
        cmd->add_option("--min-tail", params.min_tail_points,
                        "Minimum number of defined points in the tail window")
            ->capture_default_str();
    }
};

std::string params_header(const codet::TrendParams& p) {
    std::ostringstream os;
    os << "params: tail_fraction=" << p.tail_fraction
       << " half_band=" << p.half_band << " decisive_band=" << p.decisive_band
       << " growth_ratio_hi=" << p.growth_ratio_hi
       << " growth_ratio_lo=" << p.growth_ratio_lo
       << " min_tail_points=" << p.min_tail_points;
    return os.str();
}

std::string final_point_line(const codet::TrajectoryPoint& p) {
    std::ostringstream os;
    os << "final: n=" << p.n << " A=" << codet::format_sig12(p.a)
       << " B=" << codet::format_sig12(p.b) << " I="
       << (p.i ? codet::format_sig12(*p.i) : std::string("undefined"));
    return os.str();
}

int cmd_analyze(const std::string& csv_path, const std::string& out_path,
                const codet::TrendParams& params) {
    const codet::PairedSample sample = codet::read_xy_csv(csv_path);
    if (sample.size() < 2) {
        throw codet::TooShortError("input needs at least 2 rows");
    }
    const codet::Trajectory traj = codet::prefix_trajectory(sample);
    const std::string csv = codet::trajectory_csv(traj);
    if (!out_path.empty()) {
        codet::write_text_file(out_path, csv);
        std::cout << params_header(params) << "\n";
        std::cout << "trajectory: " << out_path << "\n";
        std::cout << final_point_line(traj.back()) << "\n";
    } else {
        std::cout << csv;
        std::cerr << params_header(params) << "\n";
        std::cerr << final_point_line(traj.back()) << "\n";
    }
    return 0;
}

int cmd_detect(const std::string& csv_path, const codet::TrendParams& params,
               std::optional<bool> endpoint_differs) {
    const codet::PairedSample sample = codet::read_xy_csv(csv_path);
    if (sample.size() < 2) {
        throw codet::TooShortError("input needs at least 2 rows");
    }
    const codet::Trajectory traj = codet::prefix_trajectory(sample);
    const codet::ITrend it = codet::assess_I_trend(traj, params);
    const codet::BTrend bt = codet::assess_B_trend(traj, params);
    const codet::Verdict v =
        codet::rule_of_thumb(it, bt, endpoint_differs, params);
    std::cout << params_header(params) << "\n";
    std::cout << codet::verdict_record(v) << "\n";
    std::cout << "rationale:\n";
    std::istringstream lines(v.rationale);
    for (std::string line; std::getline(lines, line);) {
        std::cout << "  " << line << "\n";
    }
    return codet::exit_code(v.decision);
}

int cmd_limit(const codet::TransferFunction& h) {
    const double value = codet::limit_I(h);
    std::printf("I(h) = %.10f\n", value);
    std::printf("endpoints_equal=%s\n",
                codet::endpoint_equal(h) ? "true" : "false");
    return 0;
}

int cmd_scenarios() {
    for (const auto& preset : codet::list_presets()) {
        std::cout << preset.name << ": " << preset.description << " ["
                  << preset.panels.size() << " panel"
                  << (preset.panels.size() > 1 ? "s" : "") << ", seed "
                  << preset.panels.front().seed.value << ", n_max "
                  << preset.panels.front().n_max << "]\n";
    }
    return 0;
}

int cmd_simulate(const std::string& preset_name, const std::string& config,
                 std::optional<std::uint64_t> seed,
                 std::optional<std::size_t> replications,
                 const std::string& out_dir, bool emit_xy,
                 const codet::TrendParams& params) {
    std::vector<codet::Scenario> panels;
    if (!preset_name.empty()) {
        panels = codet::find_preset(preset_name).panels;
    } else {
        panels.push_back(codet::parse_scenario(codet::read_text_file(config)));
    }
    for (auto& s : panels) {
        if (seed) s.seed.value = *seed;
        if (replications) s.replications = *replications;
    }
    const std::filesystem::path dir = out_dir;
    std::cout << params_header(params) << "\n";
    for (const auto& s : panels) {
        const codet::ReplicationReport rep =
            codet::simulate_to_dir(s, s.replications, dir, params, emit_xy);
        std::cout << s.name << ": seed=" << s.seed.value
                  << " replications=" << rep.runs.size() << "\n";
        for (const auto& run : rep.runs) {
            std::cout << "  wrote "
                      << (dir / codet::trajectory_file_name(s, run.rep)).string()
                      << "\n";
        }
        std::cout << "  report " << (dir / (s.name + "_report.txt")).string()
                  << "\n";
        if (rep.runs.size() == 1 && rep.runs.front().verdict) {
            std::cout << "  " << codet::verdict_record(*rep.runs.front().verdict)
                      << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "codet: intrusion detection for control systems from concomitant "
        "order statistics"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    // analyze
    auto* analyze = app.add_subcommand(
        "analyze", "Compute the statistic trajectory of an x,y CSV");
    std::string analyze_csv;
    std::string analyze_out;
    ParamFlags analyze_params;
    analyze->add_option("input", analyze_csv, "CSV file with header x,y")
        ->required();
    analyze->add_option("--out", analyze_out,
                        "Write the trajectory CSV here instead of stdout");
    analyze_params.attach(analyze);

    // detect
    auto* detect = app.add_subcommand(
        "detect", "Run the detection rule on an x,y CSV");
    std::string detect_csv;
    ParamFlags detect_params;
    std::optional<double> ha, hb;
    std::string detect_transfer;
    double detect_a = 0.0, detect_b = 1.0;
    std::vector<double> detect_coeffs;
    detect->add_option("input", detect_csv, "CSV file with header x,y")
        ->required();
    detect->add_option("--ha", ha, "Transfer value h(a) at the left endpoint");
    detect->add_option("--hb", hb, "Transfer value h(b) at the right endpoint");
    detect->add_option("--transfer", detect_transfer,
                       "Registered transfer (endpoint source): quadratic, "
                       "identity, polynomial");
    detect->add_option("--a", detect_a, "Transfer window left endpoint");
    detect->add_option("--b", detect_b, "Transfer window right endpoint");
    detect->add_option("--coeffs", detect_coeffs,
                       "Polynomial coefficients, ascending degree")
        ->delimiter(',');
    detect_params.attach(detect);

    // limit
    auto* limit = app.add_subcommand(
        "limit", "Print the no-intrusion limit I(h) and the endpoint check");
    std::string limit_transfer;
    double limit_a = 0.0, limit_b = 1.0;
    std::vector<double> limit_coeffs;
    limit->add_option("--transfer", limit_transfer, "Registered transfer name")
        ->required();
    limit->add_option("--a", limit_a, "Window left endpoint")->required();
    limit->add_option("--b", limit_b, "Window right endpoint")->required();
    limit->add_option("--coeffs", limit_coeffs,
                      "Polynomial coefficients, ascending degree")
        ->delimiter(',');

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "Run a scenario preset or config and write its artifacts");
    std::string sim_scenario, sim_config, sim_out = ".";
    std::optional<std::uint64_t> sim_seed;
    std::optional<std::size_t> sim_reps;
    bool sim_emit_xy = false;
    ParamFlags sim_params;
    auto* sim_scn = simulate->add_option("--scenario", sim_scenario,
                                         "Preset name (see `scenarios`)");
    auto* sim_cfg = simulate->add_option("--config", sim_config,
                                         "Scenario config file (key = value)");
    sim_scn->excludes(sim_cfg);
    simulate->add_option("--seed", sim_seed, "Override the scenario seed");
    simulate->add_option("--replications", sim_reps,
                         "Override the replication count");
    simulate->add_option("--out", sim_out, "Output directory")
        ->capture_default_str();
    simulate->add_flag("--emit-xy", sim_emit_xy,
                       "Also write the raw x,y samples per replication");
    sim_params.attach(simulate);

    // scenarios
    app.add_subcommand("scenarios", "List the stock scenario presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    // Transfer construction from flags: failures here are usage errors.
    auto transfer_from_flags = [](const std::string& name, double a, double b,
                                  const std::vector<double>& coeffs) {
        try {
            return codet::make_transfer(name, a, b, coeffs);
        } catch (const codet::BadParametersError& e) {
            throw CLI::ValidationError("transfer", e.what());
        }
    };

    try {
        if (app.got_subcommand("analyze")) {
            return cmd_analyze(analyze_csv, analyze_out, analyze_params.params);
        }
        if (app.got_subcommand("detect")) {
            std::optional<bool> endpoint_differs;
            if (ha.has_value() != hb.has_value()) {
                std::cerr << "error: --ha and --hb must be given together\n";
                return kExitUsage;
            }
            if (ha && hb) {
                const double tol = 1e-9 * std::max(1.0, std::abs(*ha));
                endpoint_differs = std::abs(*ha - *hb) > tol;
            } else if (!detect_transfer.empty()) {
                const auto h = transfer_from_flags(detect_transfer, detect_a,
                                                   detect_b, detect_coeffs);
                endpoint_differs = !codet::endpoint_equal(h);
            }
            return cmd_detect(detect_csv, detect_params.params,
                              endpoint_differs);
        }
        if (app.got_subcommand("limit")) {
            return cmd_limit(transfer_from_flags(limit_transfer, limit_a,
                                                 limit_b, limit_coeffs));
        }
        if (app.got_subcommand("simulate")) {
            if (sim_scenario.empty() && sim_config.empty()) {
                std::cerr << "error: simulate needs --scenario or --config\n";
                return kExitUsage;
            }
            return cmd_simulate(sim_scenario, sim_config, sim_seed, sim_reps,
                                sim_out, sim_emit_xy, sim_params.params);
        }
        if (app.got_subcommand("scenarios")) {
            return cmd_scenarios();
        }
        return kExitUsage;
    } catch (const codet::EndpointInfoRequiredError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEndpointInfo;
    } catch (const codet::DegenerateTransferError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const codet::UnknownTransferError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const codet::UnknownPresetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const codet::Error& e) {
        // Data-level problems: malformed CSV/config, duplicate inputs, too
        // little data, flat channels, bad model parameters.
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
