#include "basefee/delay.hpp"

#include <algorithm>
#include <cmath>

namespace basefee {

namespace {

void check(double beta, double phi)
{
    if (!(beta >= 1.0) || !std::isfinite(beta))
        throw std::invalid_argument("beta must be a finite value >= 1");
    if (!(phi > 0.0) || !(phi < 1.0))
        throw std::invalid_argument("phi must lie in (0, 1)");
}

double power_by_multiplication(double base, long n)
{
    double acc = 1.0;
    for (long i = 0; i < n; ++i)
        acc *= base;
    return acc;
}

}  // namespace

long t_eip(double beta, double phi)
{
    check(beta, phi);
    double const growth = 1.0 + phi;

    // The logarithm only seeds the search; the product decides the boundary.
    auto t = static_cast<long>(std::ceil(std::log(beta) / std::log1p(phi)));
    t = std::max(t, 0L);
    while (t > 0 && power_by_multiplication(growth, t - 1) >= beta)
        --t;
    while (power_by_multiplication(growth, t) < beta)
    {
        if (++t > kMaxDelayBlocks)
            throw DelayLimitError("t_eip exceeded the block limit");
    }
    return t;
}

long t_mitigated(double beta, double phi, double q)
{
    check(beta, phi);
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("q must lie in (0, 1)");

    double product = 1.0;
    double q_pow = 1.0;
    long t = 0;
    while (product < beta)
    {
        if (++t > kMaxDelayBlocks)
            throw DelayLimitError("t_mitigated exceeded the block limit");
        q_pow *= q;
        product *= 1.0 + phi * (1.0 - q_pow);
    }
    return t;
}

long t_eip(DelayQuery const& query)
{
    return t_eip(query.beta, query.phi);
}

long t_mitigated(DelayQuery const& query)
{
    return t_mitigated(query.beta, query.phi, query.q);
}

}  // namespace basefee
