#include "basefee/exact.hpp"

#include <cmath>
#include <cstdint>

namespace basefee {

Rational to_rational(double value)
{
    if (!std::isfinite(value))
        throw std::invalid_argument("cannot convert a non-finite double to a rational");
    if (value == 0.0)
        return Rational(0);

    int exponent = 0;
    double const mantissa = std::frexp(value, &exponent);  // value = mantissa * 2^exponent
    auto const scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;

    boost::multiprecision::cpp_int num(scaled);
    boost::multiprecision::cpp_int den(1);
    if (exponent >= 0)
        num <<= exponent;
    else
        den <<= -exponent;
    return Rational(num, den);
}

ExactMechanismKind to_exact(MechanismKind const& kind)
{
    return std::visit(
        [](auto const& k) -> ExactMechanismKind {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GeometricAvg<double>>)
                return GeometricAvg<Rational>{to_rational(k.q)};
            else
                return k;
        },
        kind);
}

ExactProtocolParams to_exact(ProtocolParams const& protocol)
{
    return {
        .phi = to_rational(protocol.phi),
        .target_size = to_rational(protocol.target_size),
        .initial_base_fee = to_rational(protocol.initial_base_fee),
    };
}

}  // namespace basefee
