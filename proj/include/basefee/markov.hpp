#pragma once

// Absorbing Markov reward chains.
//
// A chain has n transient states. Row i of the transition matrix holds the
// probabilities of moving to each transient state; whatever mass is missing
// from the row (1 - row sum) is the probability of absorption. Every visit
// to state i pays payouts[i]. The expected total payout starting from each
// state solves v = P v + r.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace basefee {

class NonAbsorbingChainError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class AbsorbingChain
{
public:
    /// `transitions` is row-major, n * n. Throws std::invalid_argument if the
    /// shapes disagree, a probability leaves [0, 1], a row sums above 1, or
    /// `start` is out of range.
    AbsorbingChain(std::vector<double> transitions, std::vector<double> payouts, std::size_t start,
        std::vector<std::string> labels = {});

    std::size_t size() const { return payouts_.size(); }
    std::size_t start() const { return start_; }

    double transition(std::size_t from, std::size_t to) const { return transitions_[from * size() + to]; }
    std::span<double const> transitions() const { return transitions_; }
    std::span<double const> payouts() const { return payouts_; }
    std::vector<std::string> const& labels() const { return labels_; }

    double row_sum(std::size_t row) const;
    double max_row_sum() const;

    /// Index of the state labelled `label`; throws std::out_of_range.
    std::size_t index_of(std::string const& label) const;

    /// True when every state can reach a state that leaks mass to absorption.
    bool is_absorbing() const;

private:
    std::vector<double> transitions_;
    std::vector<double> payouts_;
    std::size_t start_;
    std::vector<std::string> labels_;
};

/// Expected total payout from every state, v = (I - P)^{-1} r, by dense
/// Gaussian elimination with partial pivoting. Throws NonAbsorbingChainError
/// if some closed class never leaks mass or the system is numerically
/// singular.
std::vector<double> solve_expected_rewards(AbsorbingChain const& chain);

struct PathEnumeration
{
    double lower;             ///< payout accumulated over paths of at most max_len visits
    double truncation_bound;  ///< bound on the payout of all longer paths
};

/// Independent oracle for solve_expected_rewards: sums probability-weighted
/// payouts over every path from the start state of at most `max_len` visits,
/// grouping paths by their current state. The tail is bounded by
/// rho^max_len * max_payout / (1 - rho) with rho the largest row sum.
/// Throws std::invalid_argument if max_len < 1 or rho >= 1.
PathEnumeration enumerate_paths_reward(AbsorbingChain const& chain, int max_len);

}  // namespace basefee
