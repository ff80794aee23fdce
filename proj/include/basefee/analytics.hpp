#pragma once

// Closed-form expected rewards of the base-fee manipulation strategies and
// the power thresholds above which deviating pays off.
//
// Scenarios:
//   X        a single miner X either mines honestly or opens each of its
//            runs of consecutive blocks with an empty block and then mines
//            target-size blocks at the lowered base fee.
//   Y-join   miner Y, seeing X lower the fee, either refills the block
//            (honest, earns the (1 + delta) bonus once) or keeps the fee low.
//   Y-init   miner Y additionally opens attacks of its own, relying on X to
//            keep the fee low.
//
// Every expectation here is also produced by `chain_for` as an absorbing
// Markov chain, so `solve_expected_rewards` can check the algebra.

#include <optional>
#include <string>
#include <string_view>

#include "basefee/markov.hpp"
#include "basefee/params.hpp"

namespace basefee {

struct ScenarioInputs
{
    ProtocolParams protocol;
    DemandParams demand;
    MinerPowers powers;
};

enum class Scenario
{
    XHonest,
    XAttack,
    YJoinHonest,
    YJoinAttack,
    YInitHonest,
    YInitAttack,
};

std::string_view to_string(Scenario scenario);

/// Payout of a target-size block mined at the lowered base fee (1 - phi) b*:
/// s* (phi b* + (1 - alpha) eps).
double lowered_fee_block_payout(ProtocolParams const& protocol, DemandParams const& demand);

double x_honest_expected(ScenarioInputs const& in);
double x_attack_expected(ScenarioInputs const& in);

/// X profits strictly from deviating iff p_x exceeds this value.
double x_attack_threshold(ProtocolParams const& protocol, DemandParams const& demand);

double y_join_honest_expected(ScenarioInputs const& in);
double y_join_attack_expected(ScenarioInputs const& in);

/// Y profits from keeping the fee low iff p_y exceeds the returned value.
/// nullopt when the threshold's denominator is not positive, i.e. no finite
/// threshold exists for these parameters.
std::optional<double> y_join_threshold(ScenarioInputs const& in);

double y_init_honest_expected(ScenarioInputs const& in);
double y_init_attack_expected(ScenarioInputs const& in);
std::optional<double> y_init_threshold(ScenarioInputs const& in);

/// Dispatch to the closed form for `scenario`.
double expected_reward(Scenario scenario, ScenarioInputs const& in);

/// (attack - honest) / honest. Throws std::invalid_argument if honest == 0.
double relative_difference(double attack, double honest);

/// The absorbing chain whose start-state expectation equals the scenario's
/// closed form. States carry labels such as "X^a" or "Y^h_X".
AbsorbingChain chain_for(Scenario scenario, ScenarioInputs const& in);

struct BribeResult
{
    bool profitable;
    double margin;  ///< gas * phi * b* - s* * eps
};

/// A user with `gas` units of transactions bribes a proposer to mine an
/// empty block, then pays the lowered base fee.
BribeResult bribe_profitable(double gas, ProtocolParams const& protocol, DemandParams const& demand);

}  // namespace basefee
