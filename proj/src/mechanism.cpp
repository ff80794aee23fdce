#include "basefee/mechanism.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

namespace basefee {

PayoutSplit payout_split(double block_size, double base_fee, double tip_per_gas)
{
    if (block_size < 0 || base_fee < 0 || tip_per_gas < 0)
        throw std::invalid_argument("payout_split inputs must be non-negative");
    return {.burned = block_size * base_fee, .miner_revenue = block_size * tip_per_gas};
}

namespace {

std::string format_number(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

template <class T>
T parse_number(std::string const& text, std::string const& what)
{
    T value{};
    auto const* first = text.data();
    auto const* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("malformed " + what + ": '" + text + "'");
    return value;
}

}  // namespace

std::string to_string(MechanismKind const& kind)
{
    return std::visit(
        [](auto const& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Eip1559>)
                return "eip";
            else if constexpr (std::is_same_v<K, GeometricAvg<double>>)
                return "geo:" + format_number(k.q);
            else if constexpr (std::is_same_v<K, WindowAvg>)
                return "window:" + std::to_string(k.width);
            else
                return "pool";
        },
        kind);
}

MechanismKind parse_mechanism(std::string const& text)
{
    auto const colon = text.find(':');
    std::string const name = text.substr(0, colon);
    std::string const arg = colon == std::string::npos ? std::string{} : text.substr(colon + 1);

    MechanismKind kind;
    if ((name == "eip" || name == "eip1559") && colon == std::string::npos)
        kind = Eip1559{};
    else if ((name == "pool" || name == "feepool") && colon == std::string::npos)
        kind = FeePool{};
    else if (name == "geo" && !arg.empty())
        kind = GeometricAvg<double>{parse_number<double>(arg, "geometric weight")};
    else if (name == "window" && !arg.empty())
        kind = WindowAvg{parse_number<int>(arg, "window width")};
    else
        throw std::invalid_argument("unknown mechanism '" + text + "' (expected eip, geo:<q>, window:<W> or pool)");

    validate(kind);
    return kind;
}

}  // namespace basefee
