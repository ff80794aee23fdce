#pragma once

// Response time of the base fee to a sudden demand increase: the number of
// consecutive full (2 s*) blocks needed to multiply the base fee by beta.

#include <stdexcept>

namespace basefee {

struct DelayQuery
{
    double beta;  ///< target multiplier, >= 1
    double phi;
    double q = 0.5;  ///< geometric weight, mitigated mechanism only
};

class DelayLimitError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr long kMaxDelayBlocks = 1'000'000;

/// Smallest T with (1 + phi)^T >= beta under plain EIP-1559.
long t_eip(double beta, double phi);

/// Smallest T with prod_{k=1..T} (1 + phi (1 - q^k)) >= beta under the
/// geometric-average rule, starting from steady state.
long t_mitigated(double beta, double phi, double q);

long t_eip(DelayQuery const& query);
long t_mitigated(DelayQuery const& query);

}  // namespace basefee
