#include "jumpga/diversity.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jumpga {

namespace {

// Relative tolerance for argmax sets over floating-point sharing scores.
// Exact score ties (duplicate genotypes) may differ by summation-order
// ulps; genuinely distinct scores on small pools are rationals separated
// by far more than this.
constexpr double kScoreTol = 1e-9;

thread_local std::vector<std::size_t> tls_best;
thread_local std::vector<double> tls_scores;
thread_local std::vector<std::uint64_t> tls_mask1;
thread_local std::vector<std::uint64_t> tls_mask_mu;

std::size_t pick_uniform(std::span<const std::size_t> set, RandomSource& rng) {
    return set[rng.next_index(set.size())];
}

int pool_multiplicity(const PoolView& pool, const BitString& genotype) {
    if (pool.species != nullptr) {
        int mult = pool.species->multiplicity(genotype);
        if (pool.offspring->genotype == genotype) ++mult;
        return mult;
    }
    int mult = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (pool.at(i).genotype == genotype) ++mult;
    return mult;
}

template <typename Score, typename Better>
void collect_best(std::span<const std::size_t> candidates, Score&& score, Better&& better,
                  std::vector<std::size_t>& out) {
    out.clear();
    auto best = score(candidates[0]);
    out.push_back(candidates[0]);
    for (std::size_t c = 1; c < candidates.size(); ++c) {
        auto s = score(candidates[c]);
        if (better(s, best)) {
            best = s;
            out.clear();
            out.push_back(candidates[c]);
        } else if (!better(best, s)) {
            out.push_back(candidates[c]);
        }
    }
}

// Collects the argmin set over double scores with kScoreTol slack.
void collect_smallest_scores(std::span<const std::size_t> candidates,
                             const std::vector<double>& scores, std::vector<std::size_t>& out) {
    double best = std::numeric_limits<double>::infinity();
    for (double s : scores) best = std::min(best, s);
    const double cut = best + kScoreTol * std::max(1.0, std::fabs(best));
    out.clear();
    for (std::size_t c = 0; c < candidates.size(); ++c)
        if (scores[c] <= cut) out.push_back(candidates[c]);
}

double similarity(int distance, const SharingParams& sharing) {
    const double ratio = static_cast<double>(distance) / sharing.sigma;
    const double shaped = sharing.alpha == 1.0 ? ratio : std::pow(ratio, sharing.alpha);
    return std::max(0.0, 1.0 - shaped);
}

} // namespace

std::optional<Mechanism> parse_mechanism(std::string_view name) {
    if (name == "uniform") return Mechanism::UniformRandom;
    if (name == "dup-elim") return Mechanism::DuplicateElimination;
    if (name == "dup-min") return Mechanism::DuplicateMinimization;
    if (name == "det-crowding") return Mechanism::DeterministicCrowding;
    if (name == "convex-hull") return Mechanism::ConvexHullMax;
    if (name == "total-hamming") return Mechanism::TotalHammingMax;
    if (name == "fitness-sharing") return Mechanism::FitnessSharing;
    if (name == "island") return Mechanism::Island;
    return std::nullopt;
}

std::string_view mechanism_name(Mechanism m) {
    switch (m) {
    case Mechanism::UniformRandom: return "uniform";
    case Mechanism::DuplicateElimination: return "dup-elim";
    case Mechanism::DuplicateMinimization: return "dup-min";
    case Mechanism::DeterministicCrowding: return "det-crowding";
    case Mechanism::ConvexHullMax: return "convex-hull";
    case Mechanism::TotalHammingMax: return "total-hamming";
    case Mechanism::FitnessSharing: return "fitness-sharing";
    case Mechanism::Island: return "island";
    }
    return "?";
}

bool is_tie_break_rule(Mechanism m) { return m != Mechanism::Island; }

void DistanceCache::reset(std::span<const Individual> members) {
    size_ = members.size();
    matrix_.assign(size_ * size_, 0);
    row_sums_.assign(size_, 0);
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = i + 1; j < size_; ++j) {
            const int d = hamming_distance(members[i].genotype, members[j].genotype);
            matrix_[i * size_ + j] = d;
            matrix_[j * size_ + i] = d;
            row_sums_[i] += d;
            row_sums_[j] += d;
        }
    }
}

void DistanceCache::replace(std::size_t victim, std::span<const int> new_row) {
    for (std::size_t j = 0; j < size_; ++j) {
        if (j == victim) continue;
        const int old_d = matrix_[victim * size_ + j];
        const int new_d = new_row[j];
        row_sums_[j] += new_d - old_d;
        matrix_[victim * size_ + j] = new_d;
        matrix_[j * size_ + victim] = new_d;
    }
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < size_; ++j)
        if (j != victim) sum += new_row[j];
    row_sums_[victim] = sum;
}

void PositionCounts::reset(std::span<const Individual> members, std::size_t n) {
    counts_.assign(n, 0);
    for (const auto& m : members)
        for (std::size_t i = 0; i < n; ++i)
            if (m.genotype.bit(i)) ++counts_[i];
}

void PositionCounts::replace(const BitString& removed, const BitString& added) {
    auto wr = removed.words();
    auto wa = added.words();
    for (std::size_t w = 0; w < wr.size(); ++w) {
        std::uint64_t diff = wr[w] ^ wa[w];
        while (diff != 0) {
            const int bit = std::countr_zero(diff);
            diff &= diff - 1;
            const std::size_t pos = w * 64 + bit;
            counts_[pos] += added.bit(pos) ? 1 : -1;
        }
    }
}

int PoolView::pair_distance(std::size_t i, std::size_t j) const {
    if (i == j) return 0;
    const std::size_t off = offspring_index();
    if (distances != nullptr && !offspring_distance_row.empty()) {
        if (i == off) return offspring_distance_row[j];
        if (j == off) return offspring_distance_row[i];
        return distances->distance(i, j);
    }
    return hamming_distance(at(i).genotype, at(j).genotype);
}

int convex_hull_mixed_positions(const PoolView& pool, std::size_t removed) {
    const std::size_t n = pool.at(0).genotype.size();
    int mixed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool has_zero = false;
        bool has_one = false;
        for (std::size_t m = 0; m < pool.size(); ++m) {
            if (m == removed) continue;
            if (pool.at(m).genotype.bit(i))
                has_one = true;
            else
                has_zero = true;
        }
        if (has_zero && has_one) ++mixed;
    }
    return mixed;
}

std::int64_t total_hamming_after_removal(const PoolView& pool, std::size_t removed) {
    // Ordered-pair sum over the pool minus the removed member.
    std::int64_t total = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i == removed) continue;
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (j == removed || j == i) continue;
            total += pool.pair_distance(i, j);
        }
    }
    return total;
}

double shared_fitness(const PoolView& pool, std::size_t member, const SharingParams& sharing) {
    if (!(sharing.sigma > 0.0) || !(sharing.alpha > 0.0))
        throw std::invalid_argument("fitness sharing requires sigma > 0 and alpha > 0");
    double denom = 0.0;
    // The inner sum includes y == member; the self term contributes 1, so
    // the denominator never vanishes.
    for (std::size_t y = 0; y < pool.size(); ++y)
        denom += similarity(pool.pair_distance(member, y), sharing);
    return static_cast<double>(pool.at(member).fitness) / denom;
}

double shared_fitness_after_removal(const PoolView& pool, std::size_t removed,
                                    const SharingParams& sharing) {
    if (!(sharing.sigma > 0.0) || !(sharing.alpha > 0.0))
        throw std::invalid_argument("fitness sharing requires sigma > 0 and alpha > 0");
    double total = 0.0;
    for (std::size_t x = 0; x < pool.size(); ++x) {
        if (x == removed) continue;
        double denom = 0.0;
        for (std::size_t y = 0; y < pool.size(); ++y) {
            if (y == removed) continue;
            denom += similarity(pool.pair_distance(x, y), sharing);
        }
        total += static_cast<double>(pool.at(x).fitness) / denom;
    }
    return total;
}

std::vector<std::size_t> convex_hull_best_victims(const PoolView& pool,
                                                  std::span<const std::size_t> candidates) {
    std::vector<std::size_t> best;
    collect_best(
        candidates, [&](std::size_t z) { return convex_hull_mixed_positions(pool, z); },
        [](int a, int b) { return a > b; }, best);
    return best;
}

std::vector<std::size_t> total_hamming_best_victims(const PoolView& pool,
                                                    std::span<const std::size_t> candidates) {
    std::vector<std::size_t> best;
    collect_best(
        candidates, [&](std::size_t z) { return total_hamming_after_removal(pool, z); },
        [](std::int64_t a, std::int64_t b) { return a > b; }, best);
    return best;
}

std::vector<std::size_t> fitness_sharing_best_victims(const PoolView& pool,
                                                      std::span<const std::size_t> candidates,
                                                      const SharingParams& sharing) {
    std::vector<double> scores(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
        scores[c] = shared_fitness(pool, candidates[c], sharing);
    std::vector<std::size_t> best;
    collect_smallest_scores(candidates, scores, best);
    return best;
}

namespace {

std::size_t decide_duplicate_elimination(const PoolView& pool,
                                         std::span<const std::size_t> candidates,
                                         RandomSource& rng) {
    tls_best.clear();
    for (std::size_t z : candidates)
        if (pool_multiplicity(pool, pool.at(z).genotype) >= 2) tls_best.push_back(z);
    if (tls_best.empty()) return pick_uniform(candidates, rng);
    return pick_uniform(tls_best, rng);
}

std::size_t decide_duplicate_minimization(const PoolView& pool,
                                          std::span<const std::size_t> candidates,
                                          RandomSource& rng) {
    tls_best.clear();
    int best_mult = 0;
    for (std::size_t z : candidates) {
        const int mult = pool_multiplicity(pool, pool.at(z).genotype);
        if (mult > best_mult) {
            best_mult = mult;
            tls_best.clear();
        }
        if (mult == best_mult) tls_best.push_back(z);
    }
    return pick_uniform(tls_best, rng);
}

std::size_t decide_deterministic_crowding(const PoolView& pool,
                                          std::span<const std::size_t> candidates,
                                          const OffspringContext& ctx, RandomSource& rng) {
    (void)pool;
    tls_best.clear();
    for (int p = 0; p < ctx.parent_count; ++p) {
        const std::size_t parent = ctx.parents[p];
        if (p == 1 && ctx.parents[0] == parent) break; // same index drawn twice
        if (std::find(candidates.begin(), candidates.end(), parent) != candidates.end())
            tls_best.push_back(parent);
    }
    if (tls_best.empty()) return pick_uniform(candidates, rng);
    return pick_uniform(tls_best, rng);
}

std::size_t decide_convex_hull(const PoolView& pool, std::span<const std::size_t> candidates,
                               RandomSource& rng) {
    if (pool.one_counts == nullptr) {
        auto best = convex_hull_best_victims(pool, candidates);
        return best[rng.next_index(best.size())];
    }

    // Word-level evaluation from the per-position counts. After removing
    // z, position i holds c_i - z_i ones among mu survivors; it is
    // all-zero iff c_i == 0 or (c_i == 1 and z_i == 1), and all-one iff
    // c_i == M or (c_i == M-1 and z_i == 0), where M is the pool size and
    // c includes the offspring.
    const std::size_t n = pool.at(0).genotype.size();
    const std::size_t words = (n + 63) / 64;
    const int pool_size = static_cast<int>(pool.size());
    tls_mask1.assign(words, 0);
    tls_mask_mu.assign(words, 0);
    int always_zero = 0;
    int always_one = 0;
    const auto& counts = pool.one_counts->counts();
    const auto off_words = pool.offspring->genotype.words();
    for (std::size_t i = 0; i < n; ++i) {
        const int c = counts[i] + static_cast<int>((off_words[i >> 6] >> (i & 63)) & 1u);
        if (c == 0)
            ++always_zero;
        else if (c == pool_size)
            ++always_one;
        else if (c == 1)
            tls_mask1[i >> 6] |= std::uint64_t{1} << (i & 63);
        else if (c == pool_size - 1)
            tls_mask_mu[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    tls_best.clear();
    int best_mixed = -1;
    for (std::size_t z : candidates) {
        const auto zw = pool.at(z).genotype.words();
        int lost_zero = 0;
        int lost_one = 0;
        for (std::size_t w = 0; w < words; ++w) {
            lost_zero += std::popcount(zw[w] & tls_mask1[w]);
            lost_one += std::popcount(~zw[w] & tls_mask_mu[w]);
        }
        const int mixed = static_cast<int>(n) - always_zero - lost_zero - always_one - lost_one;
        if (mixed > best_mixed) {
            best_mixed = mixed;
            tls_best.clear();
        }
        if (mixed == best_mixed) tls_best.push_back(z);
    }
    return pick_uniform(tls_best, rng);
}

std::size_t decide_total_hamming(const PoolView& pool, std::span<const std::size_t> candidates,
                                 RandomSource& rng) {
    // g(pool minus z) = g(pool) - 2 * (total distance from z to the pool),
    // so the victim minimizes its own total distance.
    const std::size_t off = pool.offspring_index();
    const bool cached = pool.distances != nullptr && !pool.offspring_distance_row.empty();
    std::int64_t offspring_total = 0;
    if (cached) {
        for (std::size_t j = 0; j < pool.population.size(); ++j)
            offspring_total += pool.offspring_distance_row[j];
    }
    auto total_of = [&](std::size_t z) -> std::int64_t {
        if (cached)
            return z == off ? offspring_total
                            : pool.distances->row_sum(z) + pool.offspring_distance_row[z];
        std::int64_t t = 0;
        for (std::size_t j = 0; j < pool.size(); ++j) t += pool.pair_distance(z, j);
        return t;
    };
    tls_best.clear();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t z : candidates) {
        const std::int64_t t = total_of(z);
        if (t < best) {
            best = t;
            tls_best.clear();
        }
        if (t == best) tls_best.push_back(z);
    }
    return pick_uniform(tls_best, rng);
}

std::size_t decide_fitness_sharing(const PoolView& pool, std::span<const std::size_t> candidates,
                                   const SharingParams& sharing, RandomSource& rng) {
    if (!(sharing.sigma > 0.0) || !(sharing.alpha > 0.0))
        throw std::invalid_argument("fitness sharing requires sigma > 0 and alpha > 0");
    const std::size_t m = pool.size();
    tls_scores.assign(candidates.size(), 0.0);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const std::size_t x = candidates[c];
        double denom = 0.0;
        for (std::size_t y = 0; y < m; ++y)
            denom += similarity(pool.pair_distance(x, y), sharing);
        tls_scores[c] = static_cast<double>(pool.at(x).fitness) / denom;
    }
    collect_smallest_scores(candidates, tls_scores, tls_best);
    return pick_uniform(tls_best, rng);
}

} // namespace

RemovalDecision break_ties(Mechanism m, const PoolView& pool,
                           std::span<const std::size_t> candidates, const OffspringContext& ctx,
                           const SharingParams& sharing, RandomSource& rng) {
    assert(!candidates.empty());
    if (candidates.size() == 1) return {candidates[0], candidates};

    std::size_t victim = candidates[0];
    switch (m) {
    case Mechanism::UniformRandom: victim = pick_uniform(candidates, rng); break;
    case Mechanism::DuplicateElimination:
        victim = decide_duplicate_elimination(pool, candidates, rng);
        break;
    case Mechanism::DuplicateMinimization:
        victim = decide_duplicate_minimization(pool, candidates, rng);
        break;
    case Mechanism::DeterministicCrowding:
        victim = decide_deterministic_crowding(pool, candidates, ctx, rng);
        break;
    case Mechanism::ConvexHullMax: victim = decide_convex_hull(pool, candidates, rng); break;
    case Mechanism::TotalHammingMax: victim = decide_total_hamming(pool, candidates, rng); break;
    case Mechanism::FitnessSharing:
        victim = decide_fitness_sharing(pool, candidates, sharing, rng);
        break;
    case Mechanism::Island: throw std::invalid_argument("island is not a tie-breaking rule");
    }
    assert(std::find(candidates.begin(), candidates.end(), victim) != candidates.end());
    return {victim, candidates};
}

} // namespace jumpga
