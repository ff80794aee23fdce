#include "basefee/params.hpp"

#include <algorithm>

namespace basefee {

void validate(DemandParams const& d)
{
    if (!(d.b_star > 0))
        throw std::invalid_argument("b_star must be positive");
    if (!(d.eps > 0))
        throw std::invalid_argument("eps must be positive");
    if (!(d.alpha > 0) || !(d.alpha <= 1))
        throw std::invalid_argument("alpha must lie in (0, 1]");
    if (!(d.delta >= 0) || !(d.delta <= 1))
        throw std::invalid_argument("delta must lie in [0, 1]");
}

void validate(MinerPowers const& m)
{
    if (!(m.p_x >= 0) || !(m.p_x <= 1))
        throw std::invalid_argument("p_x must lie in [0, 1]");
    if (!(m.p_y >= 0) || !(m.p_y <= 1))
        throw std::invalid_argument("p_y must lie in [0, 1]");
    if (!(m.p_x + m.p_y <= 1))
        throw std::invalid_argument("p_x + p_y must not exceed 1");
}

ProtocolParams default_protocol()
{
    return {.phi = 0.125, .target_size = 1.0, .initial_base_fee = 1.0};
}

DemandParams default_demand()
{
    return {.b_star = 1.0, .eps = 1.0 / 25.0, .alpha = 0.5, .delta = 0.2};
}

double available_block_size(
    double base_fee, ProtocolParams const& protocol, DemandParams const& demand)
{
    if (!(base_fee > 0))
        throw std::invalid_argument("base fee must be positive");
    return base_fee >= demand.b_star ? protocol.target_size : protocol.max_size();
}

double fee_cap(DemandParams const& demand, ProtocolParams const&, Bidding bidding)
{
    switch (bidding)
    {
    case Bidding::Honest:
        return demand.b_star + demand.eps;
    case Bidding::Attack:
        return demand.b_star + (1.0 - demand.alpha) * demand.eps;
    }
    throw std::logic_error("unknown bidding mode");
}

double max_tip(DemandParams const& demand, ProtocolParams const& protocol, Bidding bidding)
{
    switch (bidding)
    {
    case Bidding::Honest:
        return demand.eps;
    case Bidding::Attack:
        return protocol.phi * demand.b_star + (1.0 - demand.alpha) * demand.eps;
    }
    throw std::logic_error("unknown bidding mode");
}

double miner_tip_per_gas(
    double base_fee, DemandParams const& demand, ProtocolParams const& protocol, Bidding bidding)
{
    if (!(base_fee > 0))
        throw std::invalid_argument("base fee must be positive");
    double const cap = fee_cap(demand, protocol, bidding);
    double const tip = std::min(max_tip(demand, protocol, bidding), cap - base_fee);
    return std::max(tip, 0.0);
}

std::string to_string(Bidding bidding)
{
    return bidding == Bidding::Honest ? "honest" : "attack";
}

}  // namespace basefee
