#include "basefee/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace basefee {

namespace {

// Row sums within this distance of 1 are treated as conservative (no leak).
constexpr double kLeakTolerance = 1e-15;
constexpr double kPivotTolerance = 1e-13;

}  // namespace

AbsorbingChain::AbsorbingChain(std::vector<double> transitions, std::vector<double> payouts, std::size_t start,
    std::vector<std::string> labels)
    : transitions_(std::move(transitions)), payouts_(std::move(payouts)), start_(start), labels_(std::move(labels))
{
    std::size_t const n = payouts_.size();
    if (n == 0)
        throw std::invalid_argument("chain needs at least one transient state");
    if (transitions_.size() != n * n)
        throw std::invalid_argument("transition matrix must be n x n");
    if (start_ >= n)
        throw std::invalid_argument("start state out of range");
    if (labels_.empty())
    {
        for (std::size_t i = 0; i < n; ++i)
            labels_.push_back("s" + std::to_string(i));
    }
    if (labels_.size() != n)
        throw std::invalid_argument("one label per state required");

    for (double p : transitions_)
    {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("transition probabilities must lie in [0, 1]");
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        if (row_sum(i) > 1.0 + kLeakTolerance)
            throw std::invalid_argument("transition row sums must not exceed 1");
    }
    for (double r : payouts_)
    {
        if (!std::isfinite(r))
            throw std::invalid_argument("payouts must be finite");
    }
}

double AbsorbingChain::row_sum(std::size_t row) const
{
    auto const first = transitions_.begin() + static_cast<std::ptrdiff_t>(row * size());
    return std::accumulate(first, first + static_cast<std::ptrdiff_t>(size()), 0.0);
}

double AbsorbingChain::max_row_sum() const
{
    double best = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        best = std::max(best, row_sum(i));
    return best;
}

std::size_t AbsorbingChain::index_of(std::string const& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw std::out_of_range("no state labelled '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

bool AbsorbingChain::is_absorbing() const
{
    // Backward reachability from the leaking states.
    std::size_t const n = size();
    std::vector<bool> reaches(n, false);
    for (std::size_t i = 0; i < n; ++i)
        reaches[i] = row_sum(i) < 1.0 - kLeakTolerance;

    bool changed = true;
    while (changed)
    {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (reaches[i])
                continue;
            for (std::size_t j = 0; j < n; ++j)
            {
                if (reaches[j] && transition(i, j) > 0.0)
                {
                    reaches[i] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    return std::all_of(reaches.begin(), reaches.end(), [](bool b) { return b; });
}

std::vector<double> solve_expected_rewards(AbsorbingChain const& chain)
{
    if (!chain.is_absorbing())
        throw NonAbsorbingChainError("chain has a closed class that is never absorbed");

    std::size_t const n = chain.size();
    // Augmented system [I - P | r].
    std::vector<double> a((n + 1) * n);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * (n + 1) + c]; };
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            at(i, j) = (i == j ? 1.0 : 0.0) - chain.transition(i, j);
        at(i, n) = chain.payouts()[i];
    }

    for (std::size_t col = 0; col < n; ++col)
    {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
        {
            if (std::abs(at(r, col)) > std::abs(at(pivot, col)))
                pivot = r;
        }
        if (std::abs(at(pivot, col)) < kPivotTolerance)
            throw NonAbsorbingChainError("singular system: chain is not absorbing");
        if (pivot != col)
        {
            for (std::size_t c = 0; c <= n; ++c)
                std::swap(at(col, c), at(pivot, c));
        }
        for (std::size_t r = col + 1; r < n; ++r)
        {
            double const factor = at(r, col) / at(col, col);
            if (factor == 0.0)
                continue;
            for (std::size_t c = col; c <= n; ++c)
                at(r, c) -= factor * at(col, c);
        }
    }

    std::vector<double> v(n);
    for (std::size_t i = n; i-- > 0;)
    {
        double acc = at(i, n);
        for (std::size_t j = i + 1; j < n; ++j)
            acc -= at(i, j) * v[j];
        v[i] = acc / at(i, i);
    }
    return v;
}

PathEnumeration enumerate_paths_reward(AbsorbingChain const& chain, int max_len)
{
    if (max_len < 1)
        throw std::invalid_argument("max_len must be at least 1");
    double const rho = chain.max_row_sum();
    if (!(rho < 1.0))
        throw std::invalid_argument("path enumeration needs every row sum below 1");

    std::size_t const n = chain.size();
    auto const payouts = chain.payouts();

    // mass[i]: total probability of all paths of the current length ending in i
    std::vector<double> mass(n, 0.0);
    std::vector<double> next(n, 0.0);
    mass[chain.start()] = 1.0;

    double lower = 0.0;
    for (int len = 1; len <= max_len; ++len)
    {
        for (std::size_t i = 0; i < n; ++i)
            lower += mass[i] * payouts[i];
        if (len == max_len)
            break;
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (mass[i] == 0.0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                next[j] += mass[i] * chain.transition(i, j);
        }
        std::swap(mass, next);
    }

    double max_payout = 0.0;
    for (double r : payouts)
        max_payout = std::max(max_payout, std::abs(r));
    double const bound = std::pow(rho, max_len) * max_payout / (1.0 - rho);
    return {.lower = lower, .truncation_bound = bound};
}

}  // namespace basefee
