#pragma once

// Monte Carlo estimate of the excess profit of the base-fee manipulation.
//
// Every run starts from steady state (base fee b*, target-size blocks) with
// X mining an empty block. Each later block is proposed by X with
// probability p_x; X mines target-size blocks and collects the lowered-fee
// tip, honest proposers fill the block. The run stops once the base fee is
// back to recovery_fraction * b*. The honest counterfactual replays the same
// proposer sequence at the steady-state fee and pays X s* eps per block,
// including the first one.

#include <cstdint>
#include <vector>

#include "basefee/mechanism.hpp"
#include "basefee/params.hpp"

namespace basefee {

struct SimConfig
{
    MechanismKind kind = Eip1559{};
    ProtocolParams protocol = default_protocol();
    DemandParams demand = default_demand();
    double p_x = 0.4;
    std::uint64_t runs = 10'000;
    std::uint64_t base_seed = 42;
    double recovery_fraction = 0.99;
    std::uint64_t max_blocks = 10'000;
    /// Stop as soon as X's run of consecutive blocks ends, as if honest
    /// miners restored b* immediately. Test mode for checking against the
    /// closed-form expectations.
    bool instant_recovery = false;
};

void validate(SimConfig const& config);

struct RunOutcome
{
    double attack_payout = 0.0;
    double honest_payout = 0.0;
    std::uint64_t blocks_to_recovery = 0;  ///< blocks in the trajectory, X's empty block included
    bool truncated = false;

    double excess() const { return attack_payout - honest_payout; }
};

struct SimSummary
{
    double mean_excess = 0.0;
    double ci_half_width = 0.0;  ///< 1.96 * sample stddev / sqrt(runs); 0 for a single run
    std::uint64_t runs = 0;
    std::uint64_t truncated_runs = 0;
    double mean_attack = 0.0;
    double mean_honest = 0.0;
    double mean_blocks = 0.0;
};

/// One paired attack/honest trajectory. Deterministic in
/// (config, run_index).
RunOutcome run_once(SimConfig const& config, std::uint64_t run_index);

/// All runs of `config`, spread over `workers` threads. The result does not
/// depend on `workers`: outcomes are reduced in run-index order.
SimSummary run_many(SimConfig const& config, unsigned workers = 1);

/// Outcomes of runs [0, config.runs) in index order.
std::vector<RunOutcome> run_all(SimConfig const& config, unsigned workers = 1);

SimSummary summarize(std::vector<RunOutcome> const& outcomes);

enum class SweepAxis
{
    Px,
    EpsRatio,  ///< eps / b*
};

struct SweepRow
{
    double axis_value;
    MechanismKind kind;
    SimSummary summary;
};

/// run_many for every (grid point, mechanism) pair, grid-major. All cells
/// share the template's base seed so mechanisms see the same proposers.
std::vector<SweepRow> sweep(SimConfig const& config_template, SweepAxis axis, std::vector<double> const& grid,
    std::vector<MechanismKind> const& kinds, unsigned workers = 1);

enum class Region
{
    BothProfit,
    OnlyEipProfit,
    NeitherProfit,
};

/// True when the mean excess is positive and its CI excludes zero.
bool is_profitable(SimSummary const& summary);

/// BothProfit if both mechanisms are profitable, OnlyEipProfit if only
/// plain EIP-1559 is, NeitherProfit otherwise.
Region classify(SimSummary const& eip, SimSummary const& mitigated);

struct GridCell
{
    double p_x;
    double eps_ratio;
    Region region;
    SimSummary eip;
    SimSummary mitigated;
};

/// Eip1559 versus GeometricAvg(q) over the p_x x eps/b* grid, p_x-major.
std::vector<GridCell> classify_grid(std::vector<double> const& px_grid, std::vector<double> const& eps_grid,
    double q, SimConfig const& config_template, unsigned workers = 1);

}  // namespace basefee
