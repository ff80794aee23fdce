#pragma once

// Model parameters and the two-point steady-state demand model.
//
// Units: sizes are gas units, fees are Gwei per gas unit, payouts are Gwei.
// All transactions consume exactly one unit of gas, so "block size" and
// "number of transactions" coincide.

#include <stdexcept>
#include <string>

namespace basefee {

/// Mechanism constants. `Num` is `double` on the production path and an
/// exact rational type on the golden-value path.
template <class Num>
struct BasicProtocolParams
{
    Num phi;               ///< base-fee adjustment parameter, in (0, 1)
    Num target_size;       ///< s*: block size that leaves the base fee unchanged
    Num initial_base_fee;  ///< b[0]

    Num max_size() const { return target_size * 2; }
};

using ProtocolParams = BasicProtocolParams<double>;

template <class Num>
void validate(BasicProtocolParams<Num> const& p)
{
    if (!(p.phi > 0) || !(p.phi < 1))
        throw std::invalid_argument("phi must lie in (0, 1)");
    if (!(p.target_size > 0))
        throw std::invalid_argument("target_size must be positive");
    if (!(p.initial_base_fee > 0))
        throw std::invalid_argument("initial_base_fee must be positive");
}

struct DemandParams
{
    double b_star;  ///< target base fee
    double eps;     ///< steady-state tip per gas
    double alpha;   ///< share of the tip that attack-aware users keep, in (0, 1]
    double delta;   ///< honest full-block bonus scaling, in [0, 1]
};

void validate(DemandParams const& d);

struct MinerPowers
{
    double p_x = 0.0;
    double p_y = 0.0;
};

void validate(MinerPowers const& m);

/// How users bid. Honest users bid fee cap b* + eps with tip eps. Once the
/// manipulation is underway they bid fee cap b* + (1 - alpha) eps with a
/// maximum tip of phi b* + (1 - alpha) eps.
enum class Bidding
{
    Honest,
    Attack,
};

/// Ethereum defaults: phi = 1/8, s* = 1, b[0] = 1.
ProtocolParams default_protocol();

/// b* = 1, eps / b* = 1/25, alpha = 1/2, delta = 1/5.
DemandParams default_demand();

/// Quantity demanded at `base_fee`: s* at or above b*, 2 s* below it.
double available_block_size(double base_fee, ProtocolParams const& protocol, DemandParams const& demand);

/// Fee cap and maximum tip of a transaction under the given bidding mode.
double fee_cap(DemandParams const& demand, ProtocolParams const& protocol, Bidding bidding);
double max_tip(DemandParams const& demand, ProtocolParams const& protocol, Bidding bidding);

/// min(max tip, fee cap - base fee), clamped at zero (excluded transaction).
double miner_tip_per_gas(
    double base_fee, DemandParams const& demand, ProtocolParams const& protocol, Bidding bidding);

std::string to_string(Bidding bidding);

}  // namespace basefee
