#pragma once

// Table-producing commands. Each command turns an option struct into an
// OutputTable; run_cli wires them to command-line flags.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "basefee/cli/output_table.hpp"

namespace basefee::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidArguments = 2;
inline constexpr int kExitTruncationDominated = 3;

/// Share of truncated runs above which a simulation is rejected.
inline constexpr double kMaxTruncatedShare = 0.10;

/// Environment variable naming the directory for relative --out paths.
inline constexpr char const* kOutputDirEnv = "BASEFEE_OUTPUT_DIR";

/// from, from + step, ... up to `to` (inclusive within 1e-9 steps).
std::vector<double> arithmetic_grid(double from, double to, double step);

/// `points` evenly spaced values from `from` to `to`.
std::vector<double> linspace(double from, double to, int points);

struct AnalyticOptions
{
    std::string scenario = "x";  ///< x | y-join | y-init
    std::string axis = "px";     ///< px | py | eps_ratio | alpha | delta
    double from = -1.0;          ///< negative: axis default
    double to = -1.0;
    double step = -1.0;
    double px = 0.3;
    double py = 0.18;
    double py_ratio = -1.0;  ///< if positive, p_y = py_ratio * p_x
    double eps_ratio = 1.0 / 25.0;
    double alpha = 0.5;
    double delta = 0.2;
    double phi = 0.125;
};

/// Columns: axis_value, rel_diff, threshold_marker. threshold_marker is 1 on
/// rows where rel_diff changes sign relative to the previous row.
OutputTable cmd_analytic(AnalyticOptions const& opt);

struct SimulateOptions
{
    std::string axis = "px";  ///< px | eps-ratio
    double from = -1.0;
    double to = -1.0;
    double step = -1.0;
    std::string mechanisms = "eip,geo:0.25,geo:0.5,geo:0.75";
    std::uint64_t runs = 10'000;
    std::uint64_t seed = 42;
    double px = 0.4;
    double eps_ratio = 1.0 / 25.0;
    double alpha = 0.5;
    double phi = 0.125;
    double recovery = 0.99;
    std::uint64_t max_blocks = 10'000;
    unsigned workers = 0;  ///< 0: hardware concurrency
};

struct CommandResult
{
    OutputTable table;
    std::vector<std::string> warnings;
    int exit_code = kExitOk;
};

/// Columns: axis_value, mechanism, mean_excess, ci_half_width, truncated_runs.
CommandResult cmd_simulate(SimulateOptions const& opt);

struct HeatmapOptions
{
    double q = 0.5;
    double px_from = 0.1;
    double px_to = 0.5;
    int px_points = 10;
    double eps_from = 0.01;
    double eps_to = 0.1;
    int eps_points = 10;
    std::uint64_t runs = 10'000;
    std::uint64_t seed = 42;
    double alpha = 0.5;
    double phi = 0.125;
    double recovery = 0.99;
    std::uint64_t max_blocks = 10'000;
    unsigned workers = 0;
};

/// Columns: p_x, eps_ratio, label (both | eip_only | neither).
CommandResult cmd_heatmap(HeatmapOptions const& opt);

struct DelayOptions
{
    double beta_from = 1.0;
    double beta_to = 100.0;
    double beta_step = 1.0;
    double phi = 0.125;
    std::string qs = "0.25,0.5,0.75";
};

/// Columns: beta, mechanism, T.
OutputTable cmd_delay(DelayOptions const& opt);

struct BribeOptions
{
    double gas = 1.0;
    double phi = 0.125;
    double b_star = 1.0;
    double eps_ratio = 1.0 / 25.0;
    double target_size = 1.0;
};

/// Columns: gas, margin, profitable.
OutputTable cmd_bribe(BribeOptions const& opt);

/// Parses `args` (without the program name), runs the command and writes
/// the CSV to `out` or to --out. Returns the process exit code.
int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace basefee::cli
