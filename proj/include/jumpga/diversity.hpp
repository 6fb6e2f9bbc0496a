#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jumpga/population.hpp"
#include "jumpga/random.hpp"
#include "jumpga/species.hpp"

namespace jumpga {

/// Survivor-selection policy. Island is a whole-algorithm variant, not a
/// tie-breaking rule; it shares the identifier space used by configs.
enum class Mechanism {
    UniformRandom,
    DuplicateElimination,
    DuplicateMinimization,
    DeterministicCrowding,
    ConvexHullMax,
    TotalHammingMax,
    FitnessSharing,
    Island,
};

std::optional<Mechanism> parse_mechanism(std::string_view name);
std::string_view mechanism_name(Mechanism m);
bool is_tie_break_rule(Mechanism m);

struct SharingParams {
    double sigma = 0.0; // <= 0 means "use 2k"
    double alpha = 1.0;
};

/// Provenance of the current offspring; indices refer to population slots.
struct OffspringContext {
    bool used_crossover = false;
    std::array<std::size_t, 2> parents{};
    int parent_count = 0;
};

/// Pairwise Hamming distances among population members, maintained under
/// single-slot replacement. Row sums give each member's total distance.
class DistanceCache {
public:
    void reset(std::span<const Individual> members);

    int distance(std::size_t i, std::size_t j) const { return matrix_[i * size_ + j]; }
    std::int64_t row_sum(std::size_t i) const { return row_sums_[i]; }
    std::size_t size() const { return size_; }

    /// Replaces slot `victim`; `new_row[j]` must hold the distance from the
    /// incoming genotype to the pre-replacement member j.
    void replace(std::size_t victim, std::span<const int> new_row);

private:
    std::size_t size_ = 0;
    std::vector<int> matrix_;
    std::vector<std::int64_t> row_sums_;
};

/// Per-position counts of 1-bits over the population, maintained under
/// single-slot replacement.
class PositionCounts {
public:
    void reset(std::span<const Individual> members, std::size_t n);
    void replace(const BitString& removed, const BitString& added);
    const std::vector<int>& counts() const { return counts_; }

private:
    std::vector<int> counts_;
};

/// The (mu+1) survivor-selection pool: mu population slots plus the
/// offspring at index population.size(). Cache pointers are null when the
/// engine does not maintain the corresponding structure; rules fall back
/// to from-scratch computation.
struct PoolView {
    std::span<const Individual> population;
    const Individual* offspring = nullptr;

    const SpeciesTracker* species = nullptr;
    const DistanceCache* distances = nullptr;       // population-only matrix
    std::span<const int> offspring_distance_row{};  // distance(offspring, population[j])
    const PositionCounts* one_counts = nullptr;     // population-only counts

    std::size_t size() const { return population.size() + 1; }
    std::size_t offspring_index() const { return population.size(); }
    const Individual& at(std::size_t i) const {
        return i < population.size() ? population[i] : *offspring;
    }
    int pair_distance(std::size_t i, std::size_t j) const;
};

struct RemovalDecision {
    std::size_t victim_index;
    std::span<const std::size_t> candidate_set;
};

/// Applies the tie-breaking rule `m` to the lowest-fitness candidates.
/// Preconditions: candidates nonempty, all of equal minimal pool fitness.
RemovalDecision break_ties(Mechanism m, const PoolView& pool,
                           std::span<const std::size_t> candidates, const OffspringContext& ctx,
                           const SharingParams& sharing, RandomSource& rng);

/// From-scratch optimal victim sets for the distance-based rules;
/// reference implementations used by tests, the verify suites and the
/// sampling step of break_ties.
std::vector<std::size_t> convex_hull_best_victims(const PoolView& pool,
                                                  std::span<const std::size_t> candidates);
std::vector<std::size_t> total_hamming_best_victims(const PoolView& pool,
                                                    std::span<const std::size_t> candidates);
/// Fitness sharing removes a candidate with the worst (smallest) shared
/// fitness f(x) / sum_y max{0, 1 - (d(x,y)/sigma)^alpha}, the inner sum
/// running over the whole pool including y = x; crowding shrinks the
/// shared fitness.
std::vector<std::size_t> fitness_sharing_best_victims(const PoolView& pool,
                                                      std::span<const std::size_t> candidates,
                                                      const SharingParams& sharing);

/// Objective values behind the victim sets, exposed for oracle tests.
int convex_hull_mixed_positions(const PoolView& pool, std::size_t removed);
std::int64_t total_hamming_after_removal(const PoolView& pool, std::size_t removed);
double shared_fitness(const PoolView& pool, std::size_t member, const SharingParams& sharing);
/// Total shared fitness of the pool minus one member; kept as a test
/// probe for the remainder-maximization variant of the sharing rule.
double shared_fitness_after_removal(const PoolView& pool, std::size_t removed,
                                    const SharingParams& sharing);

} // namespace jumpga
