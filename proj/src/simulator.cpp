#include "basefee/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "basefee/rng.hpp"

namespace basefee {

void validate(SimConfig const& config)
{
    validate(config.kind);
    validate(config.protocol);
    validate(config.demand);
    if (!(config.p_x >= 0.0) || !(config.p_x <= 1.0))
        throw std::invalid_argument("p_x must lie in [0, 1]");
    if (config.runs < 1)
        throw std::invalid_argument("runs must be at least 1");
    if (!(config.recovery_fraction > 0.0) || !(config.recovery_fraction < 1.0))
        throw std::invalid_argument("recovery_fraction must lie in (0, 1)");
    if (config.max_blocks < 1)
        throw std::invalid_argument("max_blocks must be at least 1");
}

namespace {

// Both the attack and the honest trajectory start from the same pool, and
// the pool evolves additively, so a zero start gives the exact bonus
// difference.
struct HonestLedger
{
    double payout = 0.0;
    double pool = 0.0;
};

RunOutcome simulate(SimConfig const& config, std::uint64_t run_index)
{
    auto const& demand = config.demand;
    ProtocolParams protocol = config.protocol;
    protocol.initial_base_fee = demand.b_star;

    bool const fee_pool = std::holds_alternative<FeePool>(config.kind);
    double const target = protocol.target_size;
    double const recovered_fee = config.recovery_fraction * demand.b_star;
    double const honest_block_payout = target * demand.eps;
    double const honest_pool_inflow = target * demand.b_star / 2.0;

    RunEngine gen(derive_run_seed(config.base_seed, run_index));

    ChainState state = init_state(config.kind, protocol, target);
    RunOutcome out;
    HonestLedger honest;

    auto x_turn_honest = [&] {
        honest.payout += honest_block_payout;
        if (fee_pool)
        {
            honest.payout += honest.pool / kPoolBonusDivisor;
            honest.pool += honest_pool_inflow;
        }
    };
    auto other_turn_honest = [&] {
        if (fee_pool)
            honest.pool += honest_pool_inflow;
    };

    // Block 0: X's empty block.
    x_turn_honest();
    if (fee_pool)
        out.attack_payout += pool_bonus(state);
    state = step(state, 0.0, config.kind, protocol);
    out.blocks_to_recovery = 1;

    while (true)
    {
        if (!config.instant_recovery && state.base_fee >= recovered_fee)
            break;
        if (out.blocks_to_recovery >= config.max_blocks)
        {
            out.truncated = true;
            break;
        }

        bool const x_proposes = uniform01(gen) < config.p_x;
        ++out.blocks_to_recovery;

        if (x_proposes)
        {
            double const tip = miner_tip_per_gas(state.base_fee, demand, protocol, Bidding::Attack);
            out.attack_payout += target * tip;
            if (fee_pool)
                out.attack_payout += pool_bonus(state);
            x_turn_honest();
            state = step(state, target, config.kind, protocol);
        }
        else
        {
            other_turn_honest();
            if (config.instant_recovery)
                break;
            double const size = available_block_size(state.base_fee, protocol, demand);
            state = step(state, size, config.kind, protocol);
        }

        if (!(state.base_fee > 0.0))
            throw std::logic_error("base fee left the positive range");
    }

    out.honest_payout = honest.payout;
    return out;
}

}  // namespace

RunOutcome run_once(SimConfig const& config, std::uint64_t run_index)
{
    validate(config);
    return simulate(config, run_index);
}

std::vector<RunOutcome> run_all(SimConfig const& config, unsigned workers)
{
    validate(config);
    std::vector<RunOutcome> outcomes(config.runs);
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::uint64_t>(config.runs, 256)));

    if (workers == 1)
    {
        for (std::uint64_t i = 0; i < config.runs; ++i)
            outcomes[i] = simulate(config, i);
        return outcomes;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
    {
        threads.emplace_back([&, w] {
            try
            {
                for (std::uint64_t i = w; i < config.runs; i += workers)
                    outcomes[i] = simulate(config, i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& t : threads)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return outcomes;
}

SimSummary summarize(std::vector<RunOutcome> const& outcomes)
{
    SimSummary s;
    s.runs = outcomes.size();
    if (outcomes.empty())
        return s;

    double const n = static_cast<double>(outcomes.size());
    double sum_excess = 0.0;
    double sum_attack = 0.0;
    double sum_honest = 0.0;
    double sum_blocks = 0.0;
    for (auto const& o : outcomes)
    {
        sum_excess += o.excess();
        sum_attack += o.attack_payout;
        sum_honest += o.honest_payout;
        sum_blocks += static_cast<double>(o.blocks_to_recovery);
        if (o.truncated)
            ++s.truncated_runs;
    }
    s.mean_excess = sum_excess / n;
    s.mean_attack = sum_attack / n;
    s.mean_honest = sum_honest / n;
    s.mean_blocks = sum_blocks / n;

    if (outcomes.size() > 1)
    {
        double ss = 0.0;
        for (auto const& o : outcomes)
        {
            double const d = o.excess() - s.mean_excess;
            ss += d * d;
        }
        double const stddev = std::sqrt(ss / (n - 1.0));
        s.ci_half_width = 1.96 * stddev / std::sqrt(n);
    }
    return s;
}

SimSummary run_many(SimConfig const& config, unsigned workers)
{
    return summarize(run_all(config, workers));
}

namespace {

void check_grid(std::vector<double> const& grid, char const* name)
{
    if (grid.empty())
        throw std::invalid_argument(std::string(name) + " grid must not be empty");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument(std::string(name) + " grid must be ascending");
}

}  // namespace

std::vector<SweepRow> sweep(SimConfig const& config_template, SweepAxis axis, std::vector<double> const& grid,
    std::vector<MechanismKind> const& kinds, unsigned workers)
{
    check_grid(grid, axis == SweepAxis::Px ? "p_x" : "eps ratio");
    if (kinds.empty())
        throw std::invalid_argument("at least one mechanism required");

    std::vector<SweepRow> rows;
    rows.reserve(grid.size() * kinds.size());
    for (double value : grid)
    {
        SimConfig config = config_template;
        if (axis == SweepAxis::Px)
            config.p_x = value;
        else
            config.demand.eps = value * config.demand.b_star;
        for (auto const& kind : kinds)
        {
            config.kind = kind;
            rows.push_back({value, kind, run_many(config, workers)});
        }
    }
    return rows;
}

bool is_profitable(SimSummary const& summary)
{
    return summary.mean_excess - summary.ci_half_width > 0.0;
}

Region classify(SimSummary const& eip, SimSummary const& mitigated)
{
    bool const eip_profit = is_profitable(eip);
    if (eip_profit && is_profitable(mitigated))
        return Region::BothProfit;
    if (eip_profit)
        return Region::OnlyEipProfit;
    return Region::NeitherProfit;
}

std::vector<GridCell> classify_grid(std::vector<double> const& px_grid, std::vector<double> const& eps_grid,
    double q, SimConfig const& config_template, unsigned workers)
{
    check_grid(px_grid, "p_x");
    check_grid(eps_grid, "eps ratio");
    MechanismKind const mitigated_kind = GeometricAvg<double>{q};
    validate(mitigated_kind);

    std::vector<GridCell> cells;
    cells.reserve(px_grid.size() * eps_grid.size());
    for (double px : px_grid)
    {
        for (double ratio : eps_grid)
        {
            SimConfig config = config_template;
            config.p_x = px;
            config.demand.eps = ratio * config.demand.b_star;

            config.kind = Eip1559{};
            SimSummary const eip = run_many(config, workers);
            config.kind = mitigated_kind;
            SimSummary const mitigated = run_many(config, workers);
            cells.push_back({px, ratio, classify(eip, mitigated), eip, mitigated});
        }
    }
    return cells;
}

}  // namespace basefee
