#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "codet/csv.hpp"
#include "codet/detector.hpp"
#include "codet/scenario.hpp"
#include "codet/stats.hpp"
#include "codet/stochastic.hpp"

namespace codet {

/// One completed simulation run. When the run is too short (or otherwise
/// outside the rule's reach) the verdict is empty and `assessment_error`
/// carries the declared error text.
struct ScenarioRun {
    std::size_t rep = 1;
    Seed seed;
    Trajectory trajectory;
    TrajectoryPoint final_point;
    std::optional<Verdict> verdict;
    std::string assessment_error;
    double growth_c = std::numeric_limits<double>::quiet_NaN();
};

/// Least-squares c in B_n ~ c * sqrt(n) over the back half n in [N/2, N]
/// (no intercept): c = sum(sqrt(n) B_n) / sum(n).
inline double fit_growth_constant(const Trajectory& traj) {
    if (traj.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double N = static_cast<double>(traj.back().n);
    double num = 0.0, den = 0.0;
    for (const auto& p : traj.points) {
        const double n = static_cast<double>(p.n);
        if (n >= N / 2.0) {
            num += std::sqrt(n) * p.b;
            den += n;
        }
    }
    return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

/// Trajectory of a deterministic-grid scenario. The equispaced grid is a
/// triangular array: the point at n is the batch statistic of the fresh
/// n-point grid spanning the whole window, with the intrusion draw at index
/// i staying attached to input slot i across n. (Random-input scenarios use
/// nested prefixes instead; a grid re-spaces every point as n grows, and
/// only the full-window grids reproduce the exact-symmetry behaviour.)
inline Trajectory grid_trajectory(const TransferFunction& h,
                                  const InputModel& input,
                                  const IntrusionModel& intrusion,
                                  std::size_t n_max, const Seed& seed) {
    if (n_max < 2) throw BadParametersError("n_max must be >= 2");
    const std::vector<double> eps = sample_intrusions(intrusion, n_max, seed);
    Trajectory traj;
    traj.points.reserve(n_max - 1);
    std::vector<double> y;
    y.reserve(n_max);
    for (std::size_t n = 2; n <= n_max; ++n) {
        const auto xs = sample_inputs(input, n, seed);
        y.clear();
        for (std::size_t k = 0; k < n; ++k) {
            if (!h.in_domain(xs[k])) {
                throw DomainViolationError("grid point outside the window");
            }
            y.push_back(h.eval(xs[k]) + eps[k]);
        }
        traj.points.push_back(stat_point(y));
    }
    return traj;
}

/// Simulate one replication of a scenario and run the rule of thumb on the
/// resulting trajectory. Endpoint information comes from the scenario's own
/// transfer function. Replication r uses seed stream (base stream + r - 1).
inline ScenarioRun run_replication(const Scenario& s, std::size_t rep,
                                   const TrendParams& params = {}) {
    s.validate();
    if (rep < 1) throw BadParametersError("replication index starts at 1");
    ScenarioRun run;
    run.rep = rep;
    run.seed = Seed{s.seed.value, s.seed.stream + (rep - 1)};

    const TransferFunction h = s.transfer();
    if (s.input.kind == InputModel::Kind::DeterministicGrid) {
        run.trajectory =
            grid_trajectory(h, s.input, s.intrusion, s.n_max, run.seed);
    } else {
        const auto xs = sample_inputs(s.input, s.n_max, run.seed);
        const PairedSample sample =
            generate_outputs(h, xs, s.intrusion, run.seed);
        run.trajectory = prefix_trajectory(sample);
    }
    run.final_point = run.trajectory.back();
    if (s.intrusion.kind == IntrusionModel::Kind::Gaussian &&
        s.intrusion.sigma2 > 0.0) {
        run.growth_c = fit_growth_constant(run.trajectory);
    }

    try {
        const ITrend it = assess_I_trend(run.trajectory, params);
        const BTrend bt = assess_B_trend(run.trajectory, params);
        run.verdict = rule_of_thumb(it, bt, !endpoint_equal(h), params);
    } catch (const InsufficientDataError& e) {
        run.assessment_error = e.what();
    }
    return run;
}

/// Single run with the scenario's seed as-is.
inline ScenarioRun run_scenario(const Scenario& s,
                                const TrendParams& params = {}) {
    return run_replication(s, 1, params);
}

/// Aggregate over k independent replications (derived seed streams).
struct ReplicationReport {
    Scenario scenario;
    TrendParams params;
    std::vector<ScenarioRun> runs;
    std::map<Decision, std::size_t> decision_counts;
    std::size_t error_count = 0;
    double mean_final_i = std::numeric_limits<double>::quiet_NaN();
    double mean_growth_c = std::numeric_limits<double>::quiet_NaN();

    std::size_t count(Decision d) const {
        const auto it = decision_counts.find(d);
        return it == decision_counts.end() ? 0 : it->second;
    }
};

inline ReplicationReport run_replications(const Scenario& s, std::size_t k,
                                          const TrendParams& params = {}) {
    if (k < 1) throw BadParametersError("need at least one replication");
    ReplicationReport rep;
    rep.scenario = s;
    rep.params = params;
    rep.runs.reserve(k);
    double i_sum = 0.0, c_sum = 0.0;
    std::size_t i_cnt = 0, c_cnt = 0;
    for (std::size_t r = 1; r <= k; ++r) {
        rep.runs.push_back(run_replication(s, r, params));
        const ScenarioRun& run = rep.runs.back();
        if (run.verdict) {
            ++rep.decision_counts[run.verdict->decision];
        } else {
            ++rep.error_count;
        }
        if (run.final_point.i) {
            i_sum += *run.final_point.i;
            ++i_cnt;
        }
        if (!std::isnan(run.growth_c)) {
            c_sum += run.growth_c;
            ++c_cnt;
        }
    }
    if (i_cnt) rep.mean_final_i = i_sum / static_cast<double>(i_cnt);
    if (c_cnt) rep.mean_growth_c = c_sum / static_cast<double>(c_cnt);
    return rep;
}

namespace detail {

inline std::string params_line(const TrendParams& p) {
    std::ostringstream os;
    os << "params: tail_fraction=" << p.tail_fraction
       << " half_band=" << p.half_band
       << " decisive_band=" << p.decisive_band
       << " growth_ratio_hi=" << p.growth_ratio_hi
       << " growth_ratio_lo=" << p.growth_ratio_lo
       << " min_tail_points=" << p.min_tail_points;
    return os.str();
}

inline std::string final_point_text(const TrajectoryPoint& p) {
    std::ostringstream os;
    os << "n=" << p.n << " A=" << format_sig12(p.a) << " B=" << format_sig12(p.b)
       << " I=" << (p.i ? format_sig12(*p.i) : std::string("undefined"));
    return os.str();
}

} // namespace detail

/// Trajectory file name: `<scenario>_rep<k>.csv`.
inline std::string trajectory_file_name(const Scenario& s, std::size_t rep) {
    return s.name + "_rep" + std::to_string(rep) + ".csv";
}

/// Write one run's trajectory CSV into `dir` and return the path.
inline std::filesystem::path write_run_csv(const Scenario& s,
                                           const ScenarioRun& run,
                                           const std::filesystem::path& dir) {
    const auto path = dir / trajectory_file_name(s, run.rep);
    write_text_file(path, trajectory_csv(run.trajectory));
    return path;
}

/// Human-readable aggregate report with the replay header (seed, scenario
/// hash, config echo), per-replication verdict records and summary counts.
inline std::string render_report(const ReplicationReport& rep) {
    std::ostringstream os;
    os << "scenario = " << rep.scenario.name << "\n";
    os << "scenario_hash = " << scenario_hash(rep.scenario) << "\n";
    os << "seed = " << rep.scenario.seed.value << " (stream "
       << rep.scenario.seed.stream << ")\n";
    os << detail::params_line(rep.params) << "\n";
    os << "replications = " << rep.runs.size() << "\n";
    os << "\nconfig:\n" << serialize_scenario(rep.scenario) << "\n";
    for (const auto& run : rep.runs) {
        os << "rep " << run.rep << ": stream=" << run.seed.stream << " final "
           << detail::final_point_text(run.final_point);
        if (!std::isnan(run.growth_c)) {
            os << " growth_c=" << format_sig12(run.growth_c);
        }
        os << "\n";
        if (run.verdict) {
            os << "  " << verdict_record(*run.verdict) << "\n";
        } else {
            os << "  error: " << run.assessment_error << "\n";
        }
    }
    os << "\ndecision_counts:";
    for (const Decision d :
         {Decision::IntrusionAbsent, Decision::IntrusionPresent,
          Decision::InterruptAndRerunDeterministic}) {
        os << " " << to_string(d) << "=" << rep.count(d);
    }
    os << " errors=" << rep.error_count << "\n";
    os << "mean_final_I = "
       << (std::isnan(rep.mean_final_i) ? std::string("n/a")
                                        : format_sig12(rep.mean_final_i))
       << "\n";
    os << "growth_fit_c = "
       << (std::isnan(rep.mean_growth_c) ? std::string("n/a")
                                         : format_sig12(rep.mean_growth_c))
       << "\n";
    return os.str();
}

/// Courtesy gnuplot script plotting every replication's I and B curves.
inline std::string render_plot_script(const Scenario& s, std::size_t k) {
    std::ostringstream os;
    os << "set terminal pngcairo size 1200,500\n";
    os << "set output '" << s.name << ".png'\n";
    os << "set datafile separator ','\n";
    os << "set datafile missing ''\n";
    os << "set multiplot layout 1,2\n";
    os << "set xlabel 'n'\n";
    os << "set ylabel 'I_n'\nset yrange [0:1]\n";
    os << "plot for [r=1:" << k << "] sprintf('" << s.name
       << "_rep%d.csv', r) using 1:4 with lines notitle, 0.5 dashtype 2 lc "
          "rgb 'black' notitle\n";
    os << "set ylabel 'B_n'\nunset yrange\n";
    os << "plot for [r=1:" << k << "] sprintf('" << s.name
       << "_rep%d.csv', r) using 1:3 with lines notitle\n";
    os << "unset multiplot\n";
    return os.str();
}

/// Run `k` replications of one scenario, writing `<scenario>_rep<k>.csv`
/// per replication plus `<scenario>_report.txt` and a gnuplot script, and
/// return the report.
inline ReplicationReport simulate_to_dir(const Scenario& s, std::size_t k,
                                         const std::filesystem::path& dir,
                                         const TrendParams& params = {},
                                         bool emit_xy = false) {
    std::filesystem::create_directories(dir);
    ReplicationReport rep = run_replications(s, k, params);
    for (const auto& run : rep.runs) {
        write_run_csv(s, run, dir);
        if (emit_xy) {
            const TransferFunction h = s.transfer();
            const auto xs = sample_inputs(s.input, s.n_max, run.seed);
            const PairedSample sample =
                generate_outputs(h, xs, s.intrusion, run.seed);
            write_text_file(
                dir / (s.name + "_rep" + std::to_string(run.rep) + "_xy.csv"),
                xy_csv(sample));
        }
    }
    write_text_file(dir / (s.name + "_report.txt"), render_report(rep));
    write_text_file(dir / (s.name + "_plot.gp"), render_plot_script(s, k));
    return rep;
}

} // namespace codet
