#include "jumpga/analytics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace jumpga {

namespace {

void validate_jump_args(int n, int k, double chi, int d) {
    if (n < 1) throw std::invalid_argument("jump probability: n must be positive");
    if (d < 1 || d > k || k > n)
        throw std::invalid_argument("jump probability: require 1 <= d <= k <= n");
    if (k + d > n)
        throw std::invalid_argument("jump probability: plateau parents at distance 2d need k+d <= n");
    if (!(chi > 0.0) || chi > static_cast<double>(n))
        throw std::invalid_argument("jump probability: require 0 < chi <= n");
}

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    double v = 1.0;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

/// log-sum-exp with Kahan compensation; term magnitudes span n^(k+d).
double sum_of_log_terms(std::span<const double> logs) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double l : logs) peak = std::max(peak, l);
    double sum = 0.0;
    double carry = 0.0;
    for (double l : logs) {
        const double value = std::exp(l - peak);
        const double y = value - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return std::exp(peak) * sum;
}

} // namespace

JumpProbability jump_to_opt_bound(int n, int k, double chi, int d) {
    validate_jump_args(n, k, chi, d);
    const double p = chi / n;
    const double log_p = std::log(p);
    const double log_q = p < 1.0 ? std::log1p(-p) : -std::numeric_limits<double>::infinity();
    const double log_half = -std::log(2.0);

    std::vector<double> logs;
    logs.reserve(2 * d + 1);
    for (int i = 0; i <= 2 * d; ++i) {
        const int zeros = k + d - i;     // bits mutation must flip to 1
        const int ones = n - k - d + i;  // bits mutation must leave alone
        if (p >= 1.0) {
            if (ones == 0) logs.push_back(std::log(binomial(2 * d, i)) + 2 * d * log_half);
            continue;
        }
        logs.push_back(std::log(binomial(2 * d, i)) + 2 * d * log_half + zeros * log_p +
                       ones * log_q);
    }
    const double exact = logs.empty() ? 0.0 : sum_of_log_terms(logs);

    // Last-term (i = 2d) lower bound: 4^-d (chi/n)^(k-d) (1-chi/n)^(n-k+d).
    double lower;
    if (p >= 1.0) {
        lower = n - k + d == 0 ? std::exp(-d * std::log(4.0) + (k - d) * log_p) : 0.0;
    } else {
        lower = std::exp(-d * std::log(4.0) + (k - d) * log_p + (n - k + d) * log_q);
    }
    return {exact, lower};
}

JumpProbability jump_success_probability(int n, int k, int d) {
    return jump_to_opt_bound(n, k, 1.0, d);
}

double enumeration_jump_probability(int n, int k, double chi, int d) {
    validate_jump_args(n, k, chi, d);
    if (n > 62) throw std::invalid_argument("enumeration oracle: requires n <= 62");
    const double p = chi / n;

    // Concrete plateau parents at Hamming distance 2d: x is all ones
    // except positions [0, k), y all ones except [d, d+k).
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    auto zeros_in = [&](int from, int len) {
        std::uint64_t m = 0;
        for (int i = 0; i < len; ++i) m |= std::uint64_t{1} << (from + i);
        return m;
    };
    const std::uint64_t x = full & ~zeros_in(0, k);
    const std::uint64_t y = full & ~zeros_in(d, k);
    const std::uint64_t diff = x ^ y;
    const int width = std::popcount(diff);
    if (width != 2 * d) throw std::logic_error("enumeration oracle: bad parent construction");

    std::vector<int> positions;
    for (int i = 0; i < n; ++i)
        if ((diff >> i) & 1u) positions.push_back(i);

    const double mask_prob = std::ldexp(1.0, -width);
    double total = 0.0;
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << width); ++choice) {
        std::uint64_t z = x & ~diff; // bits the parents agree on
        for (int j = 0; j < width; ++j) {
            const std::uint64_t bit = std::uint64_t{1} << positions[j];
            z |= ((choice >> j) & 1u) ? (y & bit) : (x & bit);
        }
        const int zeros = n - std::popcount(z);
        // Mutation must flip every remaining zero and nothing else.
        total += mask_prob * std::pow(p, zeros) * std::pow(1.0 - p, n - zeros);
    }
    return total;
}

double simulate_jump_probability(int n, int k, double chi, int d, std::int64_t trials,
                                 std::uint64_t seed) {
    validate_jump_args(n, k, chi, d);
    BitString x = BitString::all_ones(n);
    for (int i = 0; i < k; ++i) x.flip_bit(i);
    BitString y = BitString::all_ones(n);
    for (int i = 0; i < k; ++i) y.flip_bit(d + i);

    RandomSource rng(seed);
    const MutationRate rate(chi, n);
    BitString child(static_cast<std::size_t>(n));
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        uniform_crossover_into(child, x, y, rng);
        mutate_in_place(child, rate, rng);
        if (child.ones_count() == n) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

std::vector<BitString> make_conditioned_plateau_population(int n, int k, int mu, int y) {
    JumpK jump(n, k); // validates n, k
    if (mu < 2) throw std::invalid_argument("conditioned population: mu >= 2");
    if (y < 1 || y > mu) throw std::invalid_argument("conditioned population: 1 <= y <= mu");
    if (mu - y > n - k)
        throw std::invalid_argument("conditioned population: needs mu - y <= n - k plateau points");

    BitString main_species = BitString::all_ones(n);
    for (int i = 0; i < k; ++i) main_species.flip_bit(i);

    std::vector<BitString> pop;
    pop.reserve(mu);
    for (int i = 0; i < y; ++i) pop.push_back(main_species);
    // Distinct plateau points pairwise at distance 2: swap the zero at
    // position 0 for a one at position k-1+j.
    for (int j = 1; j <= mu - y; ++j) {
        BitString other = main_species;
        other.flip_bit(0);
        other.flip_bit(k - 1 + j);
        pop.push_back(other);
    }
    return pop;
}

std::vector<TransitionEstimate>
estimate_transition_probabilities(const TransitionEstimateParams& params,
                                  std::span<const int> y_targets) {
    if (params.samples < 2)
        throw std::invalid_argument("transition estimation: needs at least 2 samples");

    std::vector<TransitionEstimate> out;
    out.reserve(y_targets.size());
    for (const int y : y_targets) {
        const std::vector<BitString> seeded =
            make_conditioned_plateau_population(params.n, params.k, params.mu, y);

        GaConfig cfg;
        cfg.n = params.n;
        cfg.k = params.k;
        cfg.mu = params.mu;
        cfg.p_c = 1.0;
        cfg.chi = params.chi;
        cfg.mechanism = Mechanism::UniformRandom;
        cfg.record_trajectory = false;

        const int threads = std::max(1, params.threads);
        std::vector<std::int64_t> ups(threads, 0);
        std::vector<std::int64_t> downs(threads, 0);
        auto worker = [&](int t) {
            const JumpK jump(params.n, params.k);
            for (std::int64_t s = t; s < params.samples; s += threads) {
                GaConfig trial = cfg;
                trial.seed = RandomSource::derive(params.seed, static_cast<std::uint64_t>(y),
                                                  static_cast<std::uint64_t>(s));
                GaRun<JumpK> run(trial, jump, seeded);
                run.step();
                const int delta = run.species().largest() - y;
                if (delta > 0) ++ups[t];
                if (delta < 0) ++downs[t];
            }
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }

        std::int64_t up = 0;
        std::int64_t down = 0;
        for (int t = 0; t < threads; ++t) {
            up += ups[t];
            down += downs[t];
        }
        const double samples = static_cast<double>(params.samples);
        const double p_plus = static_cast<double>(up) / samples;
        const double p_minus = static_cast<double>(down) / samples;
        auto half_width = [&](double p) { return 1.96 * std::sqrt(p * (1.0 - p) / samples); };
        out.push_back({y, p_plus, p_minus, half_width(p_plus), half_width(p_minus),
                       params.samples, true});
    }
    return out;
}

} // namespace jumpga
