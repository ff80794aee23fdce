#pragma once

// Base-fee update rules.
//
//   Eip1559       b' = b (1 + phi (s - s*) / s*)
//   GeometricAvg  s_avg' = (1 - q) s + q s_avg,  b' = b (1 + phi (s_avg' - s*) / s*)
//   WindowAvg     s is replaced by the mean of the last W block sizes
//   FeePool       Eip1559 fee rule; half of the burned base fee is diverted
//                 into a pool and every proposer may claim pool / 8192
//
// Everything here is templated on the scalar so the same rules run over
// `double` and over exact rationals (see exact.hpp).

#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "basefee/params.hpp"

namespace basefee {

inline constexpr int kPoolBonusDivisor = 8192;

struct Eip1559
{
};

template <class Num>
struct GeometricAvg
{
    Num q;  ///< weight of the previous average, in (0, 1)
};

struct WindowAvg
{
    int width;  ///< W >= 1
};

struct FeePool
{
};

template <class Num>
using BasicMechanismKind = std::variant<Eip1559, GeometricAvg<Num>, WindowAvg, FeePool>;

using MechanismKind = BasicMechanismKind<double>;

template <class Num>
struct BasicChainState
{
    Num base_fee{};
    Num s_avg{};             // GeometricAvg only
    std::deque<Num> window;  // WindowAvg only, oldest first
    Num pool{};              // FeePool only
    std::uint64_t height = 0;
};

using ChainState = BasicChainState<double>;

template <class Num>
void validate(BasicMechanismKind<Num> const& kind)
{
    if (auto const* geo = std::get_if<GeometricAvg<Num>>(&kind))
    {
        if (!(geo->q > 0) || !(geo->q < 1))
            throw std::invalid_argument("geometric average weight q must lie in (0, 1)");
    }
    else if (auto const* win = std::get_if<WindowAvg>(&kind))
    {
        if (win->width < 1)
            throw std::invalid_argument("window width must be at least 1");
    }
}

namespace detail {

template <class Num>
void check_block_size(Num const& block_size, BasicProtocolParams<Num> const& protocol)
{
    if (block_size < 0)
        throw std::invalid_argument("block size must be non-negative");
    if (block_size > protocol.max_size())
        throw std::invalid_argument("block size exceeds 2 * target size");
}

template <class Num>
Num adjust(Num const& base_fee, Num const& measured_size, BasicProtocolParams<Num> const& protocol)
{
    Num const& target = protocol.target_size;
    return base_fee * (Num{1} + protocol.phi * (measured_size - target) / target);
}

template <class Num>
Num window_mean(std::deque<Num> const& window)
{
    Num sum{0};
    for (auto const& s : window)
        sum += s;
    return sum / Num(static_cast<long>(window.size()));
}

}  // namespace detail

/// Genesis state: base fee b[0], with every auxiliary statistic seeded from
/// the first observed block.
template <class Num>
BasicChainState<Num> init_state(
    BasicMechanismKind<Num> const& kind, BasicProtocolParams<Num> const& protocol, Num const& first_block_size)
{
    validate(protocol);
    validate(kind);
    detail::check_block_size(first_block_size, protocol);

    BasicChainState<Num> state;
    state.base_fee = protocol.initial_base_fee;
    if (std::holds_alternative<GeometricAvg<Num>>(kind))
        state.s_avg = first_block_size;
    else if (auto const* win = std::get_if<WindowAvg>(&kind))
        state.window.assign(static_cast<std::size_t>(win->width), first_block_size);
    return state;
}

/// Base fee for the next block after a block of `block_size` is appended.
/// Pure: the input state is not modified.
template <class Num>
BasicChainState<Num> step(
    BasicChainState<Num> state,
    Num const& block_size,
    BasicMechanismKind<Num> const& kind,
    BasicProtocolParams<Num> const& protocol)
{
    detail::check_block_size(block_size, protocol);

    std::visit(
        [&](auto const& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Eip1559>)
            {
                state.base_fee = detail::adjust(state.base_fee, block_size, protocol);
            }
            else if constexpr (std::is_same_v<K, GeometricAvg<Num>>)
            {
                // statistic first, then the fee update reads the post-block average
                state.s_avg = (Num{1} - k.q) * block_size + k.q * state.s_avg;
                state.base_fee = detail::adjust(state.base_fee, state.s_avg, protocol);
            }
            else if constexpr (std::is_same_v<K, WindowAvg>)
            {
                if (state.window.size() != static_cast<std::size_t>(k.width))
                    throw std::invalid_argument("chain state window does not match mechanism width");
                state.window.pop_front();
                state.window.push_back(block_size);
                state.base_fee = detail::adjust(state.base_fee, detail::window_mean(state.window), protocol);
            }
            else
            {
                state.pool += block_size * state.base_fee / Num{2};
                state.base_fee = detail::adjust(state.base_fee, block_size, protocol);
            }
        },
        kind);

    ++state.height;
    return state;
}

/// Bonus the next proposer collects under FeePool.
template <class Num>
Num pool_bonus(BasicChainState<Num> const& state)
{
    return state.pool / Num{kPoolBonusDivisor};
}

struct PayoutSplit
{
    double burned;
    double miner_revenue;
};

PayoutSplit payout_split(double block_size, double base_fee, double tip_per_gas);

/// Short identifier used in tables: "eip", "geo:0.25", "window:2", "pool".
std::string to_string(MechanismKind const& kind);

/// Inverse of to_string. Throws std::invalid_argument on malformed input.
MechanismKind parse_mechanism(std::string const& text);

}  // namespace basefee
