#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jumpga/analytics.hpp"
#include "jumpga/island.hpp"

namespace jumpga {

namespace {

/// Solves A t = b in place by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::fabs(a[r * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("singular absorbing-chain system");
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r * n + col] * inv;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> t(n);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * t[c];
        t[r] = acc / a[r * n + r];
    }
    return t;
}

double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    double v = 1.0;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

void require_pair_oracle_config(const GaConfig& cfg) {
    if (cfg.mu != 2) throw std::invalid_argument("chain oracle: requires mu = 2");
    if (cfg.mechanism != Mechanism::UniformRandom)
        throw std::invalid_argument("chain oracle: requires uniform tie-breaking");
}

} // namespace

ExpectedRuntime expected_runtime_pair_chain(const GaConfig& cfg) {
    require_pair_oracle_config(cfg);
    if (cfg.n > 6)
        throw std::invalid_argument("pair chain oracle: requires n <= 6");
    const int n = cfg.n;
    const std::uint32_t genotypes = 1u << n;
    const std::uint32_t optimum = genotypes - 1;
    const JumpK jump(n, cfg.k);
    const double p = cfg.chi / n;

    std::vector<int> fitness(genotypes);
    for (std::uint32_t g = 0; g < genotypes; ++g)
        fitness[g] = jump.evaluate_ones(std::popcount(g));

    // Mutation transition probability depends only on the flip count.
    std::vector<double> by_flips(n + 1);
    for (int d = 0; d <= n; ++d)
        by_flips[d] = std::pow(p, d) * std::pow(1.0 - p, n - d);

    // Unordered genotype pairs, triangular indexing.
    std::vector<std::uint32_t> pair_index(genotypes * genotypes);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
    for (std::uint32_t a = 0; a < genotypes; ++a)
        for (std::uint32_t b = a; b < genotypes; ++b) {
            pair_index[a * genotypes + b] = static_cast<std::uint32_t>(states.size());
            pair_index[b * genotypes + a] = static_cast<std::uint32_t>(states.size());
            states.emplace_back(a, b);
        }

    std::vector<std::uint32_t> transient;           // state -> row, or sentinel
    std::vector<std::uint32_t> row_of(states.size(), UINT32_MAX);
    for (std::uint32_t s = 0; s < states.size(); ++s) {
        const auto [a, b] = states[s];
        if (a != optimum && b != optimum) {
            row_of[s] = static_cast<std::uint32_t>(transient.size());
            transient.push_back(s);
        }
    }

    const std::size_t rows = transient.size();
    std::vector<double> system(rows * rows, 0.0);
    std::vector<double> rhs(rows, 1.0);
    for (std::size_t r = 0; r < rows; ++r) system[r * rows + r] = 1.0;

    std::vector<double> offspring_dist(genotypes);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto [x, y] = states[transient[r]];

        std::fill(offspring_dist.begin(), offspring_dist.end(), 0.0);
        auto add_mutants_of = [&](std::uint32_t z, double weight) {
            for (std::uint32_t w = 0; w < genotypes; ++w)
                offspring_dist[w] += weight * by_flips[std::popcount(z ^ w)];
        };
        if (cfg.p_c < 1.0) {
            const double w_mut = (1.0 - cfg.p_c) * 0.5;
            add_mutants_of(x, w_mut);
            add_mutants_of(y, w_mut);
        }
        if (cfg.p_c > 0.0) {
            // Parent draws with replacement: (x,x) and (y,y) each 1/4,
            // the mixed pair 1/2. Crossover outcomes are uniform over the
            // strings between the parents.
            add_mutants_of(x, cfg.p_c * 0.25);
            add_mutants_of(y, cfg.p_c * 0.25);
            const std::uint32_t diff = x ^ y;
            const std::uint32_t common = x & y;
            const double w_cross =
                cfg.p_c * 0.5 / static_cast<double>(1u << std::popcount(diff));
            std::uint32_t sub = 0;
            while (true) {
                add_mutants_of(common | sub, w_cross);
                if (sub == diff) break;
                sub = (sub - diff) & diff;
            }
        }

        for (std::uint32_t w = 0; w < genotypes; ++w) {
            const double prob = offspring_dist[w];
            if (prob == 0.0) continue;
            // Remove one member of lowest fitness from {x, y, w},
            // breaking ties uniformly.
            const int fx = fitness[x];
            const int fy = fitness[y];
            const int fw = fitness[w];
            const int fmin = std::min(fx, std::min(fy, fw));
            std::uint32_t nexts[3];
            int count = 0;
            if (fx == fmin) nexts[count++] = pair_index[y * genotypes + w];
            if (fy == fmin) nexts[count++] = pair_index[x * genotypes + w];
            if (fw == fmin) nexts[count++] = pair_index[x * genotypes + y];
            const double share = prob / count;
            for (int c = 0; c < count; ++c) {
                const std::uint32_t row = row_of[nexts[c]];
                if (row != UINT32_MAX) system[r * rows + row] -= share;
            }
        }
    }

    const std::vector<double> t = solve_dense(system, rhs, rows);

    // Expectation over the uniform random initial pair.
    const double per_genotype = 1.0 / std::ldexp(1.0, 2 * n);
    double expectation = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const auto [a, b] = states[transient[r]];
        const double weight = (a == b ? 1.0 : 2.0) * per_genotype;
        expectation += weight * t[r];
    }
    return {expectation, 0.0, ExpectedRuntime::Method::ExactPairChain};
}

ExpectedRuntime expected_runtime_ones_chain(const GaConfig& cfg) {
    require_pair_oracle_config(cfg);
    if (cfg.p_c != 0.0)
        throw std::invalid_argument("ones chain oracle: requires p_c = 0");
    if (cfg.n > 12)
        throw std::invalid_argument("ones chain oracle: requires n <= 12");
    const int n = cfg.n;
    const JumpK jump(n, cfg.k);
    const double p = cfg.chi / n;
    const double q = 1.0 - p;

    // Mutation kernel on ones-counts: flip j of the a ones and m of the
    // n-a zeros.
    std::vector<std::vector<double>> kernel(n + 1, std::vector<double>(n + 1, 0.0));
    for (int a = 0; a <= n; ++a)
        for (int j = 0; j <= a; ++j)
            for (int m = 0; m <= n - a; ++m)
                kernel[a][a - j + m] += binomial(a, j) * std::pow(p, j) * std::pow(q, a - j) *
                                        binomial(n - a, m) * std::pow(p, m) *
                                        std::pow(q, n - a - m);

    std::vector<int> fitness(n + 1);
    for (int a = 0; a <= n; ++a) fitness[a] = jump.evaluate_ones(a);

    std::vector<std::pair<int, int>> states;
    std::vector<int> index((n + 1) * (n + 1), -1);
    for (int a = 0; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            index[a * (n + 1) + b] = static_cast<int>(states.size());
            index[b * (n + 1) + a] = static_cast<int>(states.size());
            states.emplace_back(a, b);
        }

    std::vector<int> row_of(states.size(), -1);
    std::vector<int> transient;
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s].first != n && states[s].second != n) {
            row_of[s] = static_cast<int>(transient.size());
            transient.push_back(static_cast<int>(s));
        }
    }

    const std::size_t rows = transient.size();
    std::vector<double> system(rows * rows, 0.0);
    std::vector<double> rhs(rows, 1.0);
    for (std::size_t r = 0; r < rows; ++r) system[r * rows + r] = 1.0;

    for (std::size_t r = 0; r < rows; ++r) {
        const auto [a, b] = states[transient[r]];
        for (int parent = 0; parent < 2; ++parent) {
            const int src = parent == 0 ? a : b;
            for (int c = 0; c <= n; ++c) {
                const double prob = 0.5 * kernel[src][c];
                if (prob == 0.0) continue;
                const int fmin = std::min(fitness[a], std::min(fitness[b], fitness[c]));
                int nexts[3];
                int count = 0;
                if (fitness[a] == fmin) nexts[count++] = index[b * (n + 1) + c];
                if (fitness[b] == fmin) nexts[count++] = index[a * (n + 1) + c];
                if (fitness[c] == fmin) nexts[count++] = index[a * (n + 1) + b];
                const double share = prob / count;
                for (int i = 0; i < count; ++i)
                    if (row_of[nexts[i]] >= 0) system[r * rows + row_of[nexts[i]]] -= share;
            }
        }
    }

    const std::vector<double> t = solve_dense(system, rhs, rows);

    std::vector<double> ones_prob(n + 1);
    for (int a = 0; a <= n; ++a) ones_prob[a] = binomial(n, a) * std::ldexp(1.0, -n);
    double expectation = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const auto [a, b] = states[transient[r]];
        const double weight =
            a == b ? ones_prob[a] * ones_prob[a] : 2.0 * ones_prob[a] * ones_prob[b];
        expectation += weight * t[r];
    }
    return {expectation, 0.0, ExpectedRuntime::Method::ExactOnesChain};
}

ExpectedRuntime expected_runtime_monte_carlo(const GaConfig& cfg, std::int64_t replications) {
    if (replications < 2)
        throw std::invalid_argument("Monte-Carlo oracle: needs at least 2 replications");
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t i = 0; i < replications; ++i) {
        GaConfig run_cfg = cfg;
        run_cfg.seed = RandomSource::derive(cfg.seed, 0x6d63, static_cast<std::uint64_t>(i));
        run_cfg.record_trajectory = false;
        const RunRecord rec = run_configured(run_cfg);
        if (!rec.evaluations_to_optimum)
            throw std::runtime_error("Monte-Carlo oracle: run exhausted its budget");
        // Count steps only, matching the chain oracles: the mu
        // initialization evaluations are excluded.
        const double steps = static_cast<double>(*rec.evaluations_to_optimum - cfg.mu);
        const double delta = steps - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (steps - mean);
    }
    const double variance = m2 / static_cast<double>(replications - 1);
    const double half_width = 1.96 * std::sqrt(variance / static_cast<double>(replications));
    return {mean, half_width, ExpectedRuntime::Method::MonteCarlo};
}

ExpectedRuntime brute_force_expected_runtime(const GaConfig& cfg) {
    if (cfg.mu == 2 && cfg.mechanism == Mechanism::UniformRandom) {
        if (cfg.n <= 6) return expected_runtime_pair_chain(cfg);
        if (cfg.p_c == 0.0 && cfg.n <= 12) return expected_runtime_ones_chain(cfg);
    }
    return expected_runtime_monte_carlo(cfg, 10'000);
}

} // namespace jumpga
