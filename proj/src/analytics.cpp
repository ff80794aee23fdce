#include "basefee/analytics.hpp"

#include <stdexcept>

namespace basefee {

namespace {

void check_x(ScenarioInputs const& in)
{
    validate(in.protocol);
    validate(in.demand);
    validate(in.powers);
    if (!(in.powers.p_x < 1.0))
        throw std::invalid_argument("p_x must be below 1");
}

void check_y(ScenarioInputs const& in)
{
    validate(in.protocol);
    validate(in.demand);
    validate(in.powers);
    if (!(in.powers.p_x + in.powers.p_y < 1.0))
        throw std::invalid_argument("p_x + p_y must be below 1");
}

std::optional<double> positive_ratio(double num, double den)
{
    if (!(den > 0.0))
        return std::nullopt;
    return num / den;
}

}  // namespace

std::string_view to_string(Scenario scenario)
{
    switch (scenario)
    {
    case Scenario::XHonest: return "x-honest";
    case Scenario::XAttack: return "x-attack";
    case Scenario::YJoinHonest: return "y-join-honest";
    case Scenario::YJoinAttack: return "y-join-attack";
    case Scenario::YInitHonest: return "y-init-honest";
    case Scenario::YInitAttack: return "y-init-attack";
    }
    return "unknown";
}

double lowered_fee_block_payout(ProtocolParams const& protocol, DemandParams const& demand)
{
    return protocol.target_size * (protocol.phi * demand.b_star + (1.0 - demand.alpha) * demand.eps);
}

double x_honest_expected(ScenarioInputs const& in)
{
    check_x(in);
    return in.protocol.target_size * in.demand.eps / (1.0 - in.powers.p_x);
}

double x_attack_expected(ScenarioInputs const& in)
{
    check_x(in);
    double const px = in.powers.p_x;
    return px * lowered_fee_block_payout(in.protocol, in.demand) / (1.0 - px);
}

double x_attack_threshold(ProtocolParams const& protocol, DemandParams const& demand)
{
    double const den = protocol.phi * demand.b_star + (1.0 - demand.alpha) * demand.eps;
    if (!(den > 0.0))
        throw std::invalid_argument("phi b* + (1 - alpha) eps must be positive");
    return demand.eps / den;
}

double y_join_honest_expected(ScenarioInputs const& in)
{
    check_y(in);
    auto const& d = in.demand;
    double const px = in.powers.p_x;
    double const py = in.powers.p_y;
    double const phi_b = in.protocol.phi * d.b_star;
    double const bonus = 1.0 + d.delta;

    double const per_s = (1.0 - py) * bonus * phi_b
        + d.eps * (bonus - d.alpha * bonus * (1.0 - py) - d.delta * py);
    return (1.0 - px) * per_s * in.protocol.target_size / (1.0 - px - py);
}

double y_join_attack_expected(ScenarioInputs const& in)
{
    check_y(in);
    double const px = in.powers.p_x;
    double const py = in.powers.p_y;
    return (1.0 - px) * lowered_fee_block_payout(in.protocol, in.demand) / (1.0 - px - py);
}

std::optional<double> y_join_threshold(ScenarioInputs const& in)
{
    validate(in.protocol);
    validate(in.demand);
    auto const& d = in.demand;
    double const phi_b = in.protocol.phi * d.b_star;
    double const num = d.delta * ((1.0 - d.alpha) * d.eps + phi_b);
    double const den = (1.0 - d.alpha) * d.delta * d.eps + (1.0 + d.delta) * phi_b - d.alpha * d.eps;
    return positive_ratio(num, den);
}

double y_init_honest_expected(ScenarioInputs const& in)
{
    check_y(in);
    auto const& d = in.demand;
    double const px = in.powers.p_x;
    double const py = in.powers.p_y;
    double const phi_b = in.protocol.phi * d.b_star;

    double const per_s = (1.0 + d.delta) * phi_b * px * py
        + d.eps * (1.0 - px + ((1.0 - d.alpha) * d.delta - d.alpha) * px * py);
    return per_s * in.protocol.target_size / (1.0 - px - py);
}

double y_init_attack_expected(ScenarioInputs const& in)
{
    check_y(in);
    double const px = in.powers.p_x;
    double const py = in.powers.p_y;
    return lowered_fee_block_payout(in.protocol, in.demand) * py / (1.0 - px - py);
}

std::optional<double> y_init_threshold(ScenarioInputs const& in)
{
    validate(in.protocol);
    validate(in.demand);
    validate(in.powers);
    auto const& d = in.demand;
    double const px = in.powers.p_x;
    double const phi_b = in.protocol.phi * d.b_star;
    double const num = d.eps * (1.0 - px);
    double const den = (1.0 - d.alpha) * d.eps + phi_b * (1.0 - px) + (1.0 + d.delta) * d.eps * d.alpha * px
        - d.delta * px * (d.eps + phi_b);
    return positive_ratio(num, den);
}

double expected_reward(Scenario scenario, ScenarioInputs const& in)
{
    switch (scenario)
    {
    case Scenario::XHonest: return x_honest_expected(in);
    case Scenario::XAttack: return x_attack_expected(in);
    case Scenario::YJoinHonest: return y_join_honest_expected(in);
    case Scenario::YJoinAttack: return y_join_attack_expected(in);
    case Scenario::YInitHonest: return y_init_honest_expected(in);
    case Scenario::YInitAttack: return y_init_attack_expected(in);
    }
    throw std::logic_error("unknown scenario");
}

double relative_difference(double attack, double honest)
{
    if (honest == 0.0)
        throw std::invalid_argument("relative difference undefined for zero honest reward");
    return (attack - honest) / honest;
}

AbsorbingChain chain_for(Scenario scenario, ScenarioInputs const& in)
{
    bool const y_scenario = scenario != Scenario::XHonest && scenario != Scenario::XAttack;
    if (y_scenario)
        check_y(in);
    else
        check_x(in);

    double const px = in.powers.p_x;
    double const py = in.powers.p_y;
    double const s = in.protocol.target_size;
    double const tip_block = s * in.demand.eps;
    double const lowered = lowered_fee_block_payout(in.protocol, in.demand);
    double const refill = lowered * (1.0 + in.demand.delta);

    switch (scenario)
    {
    case Scenario::XHonest:
        return AbsorbingChain({px}, {tip_block}, 0, {"X^h"});

    case Scenario::XAttack:
        // S^a -> X^a, X^a loops
        return AbsorbingChain(
            {0.0, px,
             0.0, px},
            {0.0, lowered}, 0, {"S^a", "X^a"});

    case Scenario::YJoinHonest:
        // order: Y^h_X, X^h, Y^h_Y
        return AbsorbingChain(
            {0.0, px, py,
             py,  px, 0.0,
             0.0, px, py},
            {refill, 0.0, tip_block}, 0, {"Y^h_X", "X^h", "Y^h_Y"});

    case Scenario::YJoinAttack:
        // order: Y^a, X^a
        return AbsorbingChain(
            {py, px,
             py, px},
            {lowered, 0.0}, 0, {"Y^a", "X^a"});

    case Scenario::YInitHonest:
        // order: Y^h, X^h, Y^h_X, Y^h_Y
        return AbsorbingChain(
            {py,  px, 0.0, 0.0,
             0.0, px, py,  0.0,
             0.0, px, 0.0, py,
             0.0, px, 0.0, py},
            {tip_block, 0.0, refill, tip_block}, 0, {"Y^h", "X^h", "Y^h_X", "Y^h_Y"});

    case Scenario::YInitAttack:
        // order: S^a, Y^a, X^a
        return AbsorbingChain(
            {0.0, py, px,
             0.0, py, px,
             0.0, py, px},
            {0.0, lowered, 0.0}, 0, {"S^a", "Y^a", "X^a"});
    }
    throw std::logic_error("unknown scenario");
}

BribeResult bribe_profitable(double gas, ProtocolParams const& protocol, DemandParams const& demand)
{
    if (!(gas > 0.0))
        throw std::invalid_argument("gas must be positive");
    double const margin = gas * protocol.phi * demand.b_star - protocol.target_size * demand.eps;
    return {.profitable = margin > 0.0, .margin = margin};
}

}  // namespace basefee
