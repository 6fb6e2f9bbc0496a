#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jumpga/engine.hpp"

namespace jumpga {

/// Exact probability plus the matching closed-form lower bound.
struct JumpProbability {
    double exact;
    double lower_bound;
};

/// Probability that uniform crossover of two plateau parents at Hamming
/// distance 2d, followed by standard bit mutation at rate 1/n, creates
/// the all-ones optimum:
///   sum_{i=0}^{2d} C(2d,i) 2^{-2d} n^{-(k+d-i)} (1-1/n)^{n-k-d+i}
/// The lower bound keeps only the i = 2d term.
JumpProbability jump_success_probability(int n, int k, int d);

/// Same probability for general mutation rate chi/n; reduces to
/// jump_success_probability at chi = 1. The lower bound is the last term
/// 4^{-d} (chi/n)^{k-d} (1-chi/n)^{n-k+d}.
JumpProbability jump_to_opt_bound(int n, int k, double chi, int d);

/// Independent enumeration oracle: sums over all 2^(2d) crossover masks
/// the exact probability that mutation repairs the remaining zeros.
double enumeration_jump_probability(int n, int k, double chi, int d);

/// Monte-Carlo estimate of the same event from explicitly constructed
/// plateau parents at distance 2d. Returns the hit frequency.
double simulate_jump_probability(int n, int k, double chi, int d, std::int64_t trials,
                                 std::uint64_t seed);

/// Empirical one-step transition frequencies of the largest-species size
/// on the plateau, conditioned on Y(t) = y.
struct TransitionEstimate {
    int y;
    double p_plus;
    double p_minus;
    double half_width_plus;  // 1.96 normal-approximation half-widths
    double half_width_minus;
    std::int64_t samples;
    bool complete;
};

struct TransitionEstimateParams {
    int n;
    int k;
    int mu;
    double chi;
    std::int64_t samples = 10'000;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Prepares an all-plateau population with largest species exactly y (one
/// species of size y plus distinct plateau points pairwise at distance 2)
/// and tallies Y-changes over single GA steps from i.i.d. re-preparations.
std::vector<TransitionEstimate>
estimate_transition_probabilities(const TransitionEstimateParams& params,
                                  std::span<const int> y_targets);

/// Plateau population used by the conditioning protocol; exposed for
/// tests.
std::vector<BitString> make_conditioned_plateau_population(int n, int k, int mu, int y);

/// Expected evaluations-to-optimum for mu = 2, counted from the initial
/// population (uniform at random) and excluding initialization.
struct ExpectedRuntime {
    enum class Method { ExactPairChain, ExactOnesChain, MonteCarlo };
    double value;
    double half_width; // 0 for the exact methods
    Method method;
};

/// Independent absorbing-Markov-chain oracle over population states.
/// Exact for n <= 6 (full genotype-pair chain, any p_c) and for p_c = 0
/// with n <= 12 (ones-count-pair chain); otherwise falls back to a
/// Monte-Carlo estimate over the engine and reports a confidence
/// half-width.
ExpectedRuntime brute_force_expected_runtime(const GaConfig& cfg);

/// Forces a specific oracle path; throws if the configuration is out of
/// range for it.
ExpectedRuntime expected_runtime_pair_chain(const GaConfig& cfg);
ExpectedRuntime expected_runtime_ones_chain(const GaConfig& cfg);
ExpectedRuntime expected_runtime_monte_carlo(const GaConfig& cfg, std::int64_t replications);

} // namespace jumpga
