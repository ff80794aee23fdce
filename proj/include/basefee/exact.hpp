#pragma once

// Arbitrary-precision rational arithmetic for golden-value checks of the
// update rules.

#include <boost/multiprecision/cpp_int.hpp>

#include "basefee/mechanism.hpp"

namespace basefee {

using Rational = boost::multiprecision::cpp_rational;

using ExactProtocolParams = BasicProtocolParams<Rational>;
using ExactMechanismKind = BasicMechanismKind<Rational>;
using ExactChainState = BasicChainState<Rational>;

inline Rational ratio(long num, long den)
{
    return Rational(num, den);
}

/// Exact value of a finite double (every double is a dyadic rational).
Rational to_rational(double value);

ExactMechanismKind to_exact(MechanismKind const& kind);
ExactProtocolParams to_exact(ProtocolParams const& protocol);

}  // namespace basefee
