#include <algorithm>
#include <cmath>
#include <ostream>

#include "jumpga/analytics.hpp"
#include "jumpga/sweep.hpp"

namespace jumpga {

namespace {

bool verify_oracles(std::ostream& out) {
    double worst_rel = 0.0;
    bool bounds_ok = true;
    int checked = 0;
    for (int n = 4; n <= 12; ++n)
        for (int k = 1; k <= 3 && k <= n; ++k)
            for (int d = 1; d <= k; ++d) {
                if (k + d > n) continue;
                for (double chi : {1.0, 1.5, 2.0}) {
                    const JumpProbability closed = jump_to_opt_bound(n, k, chi, d);
                    const double reference = enumeration_jump_probability(n, k, chi, d);
                    const double rel = std::fabs(closed.exact - reference) / reference;
                    worst_rel = std::max(worst_rel, rel);
                    if (closed.exact < closed.lower_bound * (1.0 - 1e-12)) bounds_ok = false;
                    ++checked;
                }
            }
    const bool pass = worst_rel <= 1e-10 && bounds_ok;
    out << (pass ? "[PASS]" : "[FAIL]") << " oracles: " << checked
        << " closed-form vs enumeration checks, max relative error " << worst_rel
        << " (tolerance 1e-10), lower bounds " << (bounds_ok ? "hold" : "VIOLATED") << "\n";
    return pass;
}

bool verify_transitions(std::ostream& out) {
    const int n = 100;
    const int k = 3;
    const int mu = derive_mu(n);
    const int interior_a = (3 * mu + 3) / 4; // ceil(3 mu / 4)
    const std::vector<int> targets = {interior_a, mu - 1, mu};

    bool pass = true;
    for (double chi : {1.0, 2.0}) {
        TransitionEstimateParams params;
        params.n = n;
        params.k = k;
        params.mu = mu;
        params.chi = chi;
        params.samples = 50'000;
        params.seed = 0x7452414e53;
        params.threads = worker_count_from_env();
        const auto estimates = estimate_transition_probabilities(params, targets);
        for (const auto& e : estimates) {
            out << "  chi=" << chi << " y=" << e.y << ": p+ = " << e.p_plus << " +- "
                << e.half_width_plus << ", p- = " << e.p_minus << " +- " << e.half_width_minus
                << "\n";
            if (e.y == mu) {
                if (!(e.p_minus > 0.0)) {
                    pass = false;
                    out << "  [FAIL] expected p-(mu) > 0\n";
                }
                continue;
            }
            if (chi == 2.0) {
                // One-sided test of p- > p+ at 95%.
                const double diff = e.p_minus - e.p_plus;
                const double se = std::sqrt((e.p_plus + e.p_minus - diff * diff) /
                                            static_cast<double>(e.samples));
                if (!(diff > 1.645 * se)) {
                    pass = false;
                    out << "  [FAIL] chi=2 y=" << e.y << ": no significant negative drift\n";
                }
            } else {
                // The fair-walk claim is one-sided: conditional increase
                // probability at most 1/2 + O(1/n).
                const double conditional = e.p_plus / (e.p_plus + e.p_minus);
                out << "    conditional increase = " << conditional << "\n";
                if (!(conditional <= 0.6)) {
                    pass = false;
                    out << "  [FAIL] chi=1 y=" << e.y << ": conditional increase above 0.6\n";
                }
            }
        }
    }
    out << (pass ? "[PASS]" : "[FAIL]") << " transitions: sign checks at n=" << n << ", mu=" << mu
        << "\n";
    return pass;
}

bool verify_equivalence(std::ostream& out) {
    RandomSource rng(0x45515549);
    const int trials = 10'000;
    int mismatches = 0;
    for (int t = 0; t < trials; ++t) {
        const int n = 6 + static_cast<int>(rng.next_index(7));        // 6..12
        const int max_k = std::min(3, n / 2);
        const int k = 1 + static_cast<int>(rng.next_index(max_k));    // 1..min(3, n/2)
        const int pool_size = 3 + static_cast<int>(rng.next_index(5)); // 3..7

        Population pool_members(pool_size);
        const JumpK jump(n, k);
        for (auto& member : pool_members) {
            BitString g = BitString::all_ones(n);
            int zeros = 0;
            while (zeros < k) {
                const std::size_t pos = rng.next_index(n);
                if (g.bit(pos)) {
                    g.flip_bit(pos);
                    ++zeros;
                }
            }
            member.genotype = g;
            member.fitness = jump.evaluate(g);
        }

        PoolView pool;
        pool.population = std::span<const Individual>(pool_members.data(), pool_members.size() - 1);
        pool.offspring = &pool_members.back();

        std::vector<std::size_t> candidates(pool_members.size());
        for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;

        SharingParams sharing{2.0 * k, 1.0};
        auto sharing_set = fitness_sharing_best_victims(pool, candidates, sharing);
        auto hamming_set = total_hamming_best_victims(pool, candidates);
        std::sort(sharing_set.begin(), sharing_set.end());
        std::sort(hamming_set.begin(), hamming_set.end());
        if (sharing_set != hamming_set) ++mismatches;
    }
    const bool pass = mismatches == 0;
    out << (pass ? "[PASS]" : "[FAIL]") << " equivalence: " << trials
        << " random plateau pools, " << mismatches << " argmax-set mismatches\n";
    return pass;
}

} // namespace

bool run_verify_suite(const std::string& suite, std::ostream& out) {
    if (suite == "oracles") return verify_oracles(out);
    if (suite == "transitions") return verify_transitions(out);
    if (suite == "equivalence") return verify_equivalence(out);
    throw std::invalid_argument("unknown verify suite: " + suite);
}

} // namespace jumpga
