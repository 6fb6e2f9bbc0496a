#pragma once

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumpga/diversity.hpp"
#include "jumpga/fitness.hpp"
#include "jumpga/population.hpp"
#include "jumpga/random.hpp"
#include "jumpga/species.hpp"
#include "jumpga/variation.hpp"

namespace jumpga {

template <typename T>
concept Objective = requires(const T& f, const BitString& x, int fitness) {
    { f.size() } -> std::convertible_to<int>;
    { f.evaluate(x) } -> std::convertible_to<int>;
    { f.max_fitness() } -> std::convertible_to<int>;
    { f.is_optimum_fitness(fitness) } -> std::convertible_to<bool>;
    { f.is_plateau_or_optimum_fitness(fitness) } -> std::convertible_to<bool>;
};

/// Full parameterization of one run.
struct GaConfig {
    int n = 0;
    int k = 1;
    int mu = 2;
    double p_c = 1.0;
    double chi = 1.0;
    Mechanism mechanism = Mechanism::UniformRandom;
    double sharing_sigma = 0.0; // <= 0 resolves to 2k
    double sharing_alpha = 1.0;
    std::int64_t max_evaluations = 1'000'000'000;
    std::uint64_t seed = 1;
    std::int64_t trajectory_stride = 0; // 0 resolves to mu
    bool record_trajectory = true;
    bool island_receiver_mutation = true;
    bool self_check = false;

    void validate() const {
        if (n < 1) throw std::invalid_argument("GaConfig: n must be positive");
        if (k < 1 || k > n) throw std::invalid_argument("GaConfig: require 1 <= k <= n");
        if (mu < 2) throw std::invalid_argument("GaConfig: require mu >= 2");
        if (p_c < 0.0 || p_c > 1.0) throw std::invalid_argument("GaConfig: p_c must be in [0,1]");
        if (!(chi > 0.0) || chi > static_cast<double>(n))
            throw std::invalid_argument("GaConfig: require 0 < chi <= n");
        if (max_evaluations < 1) throw std::invalid_argument("GaConfig: budget must be positive");
        if (mechanism == Mechanism::FitnessSharing && sharing_sigma > 0.0 &&
            !(sharing_alpha > 0.0))
            throw std::invalid_argument("GaConfig: sharing alpha must be positive");
    }

    SharingParams resolved_sharing() const {
        SharingParams p{sharing_sigma, sharing_alpha};
        if (p.sigma <= 0.0) p.sigma = 2.0 * k;
        return p;
    }

    std::int64_t resolved_stride() const { return trajectory_stride > 0 ? trajectory_stride : mu; }
};

struct TrajectoryPoint {
    std::int64_t evaluation;
    int largest_species;
    int distinct_species;
};

struct RunRecord {
    std::optional<std::int64_t> evaluations_to_optimum;
    std::optional<std::int64_t> plateau_arrival_evaluation;
    std::int64_t evaluations_used = 0;
    std::vector<TrajectoryPoint> trajectory;
    std::uint64_t final_population_digest = 0;
    bool optimum_on_receiver = false; // set by island runs only
};

struct StepOutcome {
    OffspringContext context;
    std::size_t victim;
    int offspring_fitness;
    bool offspring_survived;
};

/// Steady-state (mu+1) GA: one offspring per generation (crossover with
/// probability p_c, then standard bit mutation), then removal of one
/// lowest-fitness member of the (mu+1)-pool under the configured
/// tie-breaking rule.
template <Objective Obj>
class GaRun {
public:
    GaRun(const GaConfig& cfg, Obj objective)
        : GaRun(cfg, std::move(objective), nullptr) {}

    /// Starts from a given population (test fixtures); the seeded
    /// genotypes do not count against the evaluation budget.
    GaRun(const GaConfig& cfg, Obj objective, const std::vector<BitString>& seeded)
        : GaRun(cfg, std::move(objective), &seeded) {}

    const Population& population() const { return pop_; }
    const SpeciesTracker& species() const { return species_; }
    std::int64_t evaluations() const { return evaluations_; }
    std::int64_t steps() const { return steps_; }
    int best_fitness() const { return best_fitness_; }
    bool optimum_found() const { return found_at_.has_value(); }
    std::optional<std::int64_t> optimum_evaluation() const { return found_at_; }
    std::optional<std::int64_t> plateau_arrival() const { return plateau_at_; }

    /// One generation: exactly one fitness evaluation.
    StepOutcome step() {
        StepOutcome out{};
        const std::size_t mu = pop_.size();

        if (rng_.next_double() < cfg_.p_c) {
            const std::size_t a = rng_.next_index(mu);
            const std::size_t b = rng_.next_index(mu); // with replacement
            uniform_crossover_into(child_, pop_[a].genotype, pop_[b].genotype, rng_);
            out.context.used_crossover = true;
            out.context.parents = {a, b};
            out.context.parent_count = 2;
        } else {
            const std::size_t a = rng_.next_index(mu);
            child_ = pop_[a].genotype;
            out.context.used_crossover = false;
            out.context.parents = {a, a};
            out.context.parent_count = 1;
        }
        mutate_in_place(child_, rate_, rng_);

        const int f_child = obj_.evaluate(child_);
        ++evaluations_;
        ++steps_;
        out.offspring_fitness = f_child;
        if (!found_at_ && obj_.is_optimum_fitness(f_child)) found_at_ = evaluations_;

        const int f_min = std::min(min_fitness_, f_child);
        const auto& bucket = buckets_[static_cast<std::size_t>(f_min)];
        const std::size_t tied_members = min_fitness_ == f_min ? bucket.size() : 0;
        const std::size_t total = tied_members + (f_child == f_min ? 1 : 0);

        std::size_t victim;
        bool child_row_done = false;
        if (total == 1) {
            victim = tied_members == 1 ? static_cast<std::size_t>(bucket[0]) : mu;
        } else if (cfg_.mechanism == Mechanism::UniformRandom) {
            const std::size_t r = rng_.next_index(total);
            victim = r < tied_members ? static_cast<std::size_t>(bucket[r]) : mu;
        } else {
            candidates_.clear();
            for (std::uint32_t i : bucket) candidates_.push_back(i);
            if (f_child == f_min) candidates_.push_back(mu);
            if (dist_active_) {
                compute_child_row();
                child_row_done = true;
            }
            const PoolView pool = make_pool(f_child);
            victim = break_ties(cfg_.mechanism, pool, candidates_, out.context, sharing_, rng_)
                         .victim_index;
        }
        assert((victim == mu ? f_child : pop_[victim].fitness) == f_min);
        out.victim = victim;
        out.offspring_survived = victim != mu;

        if (victim != mu) {
            if (dist_active_ && !child_row_done) compute_child_row();
            replace_member(victim, f_child);
        }
        if (cfg_.self_check) check_invariants();
        return out;
    }

    /// Iterates until the optimum enters the population or the budget is
    /// exhausted.
    RunRecord run() {
        RunRecord rec;
        const std::int64_t stride = cfg_.resolved_stride();
        if (cfg_.record_trajectory) sample_trajectory(rec);
        while (!found_at_) {
            if (evaluations_ >= cfg_.max_evaluations) break;
            step();
            if (cfg_.record_trajectory && steps_ % stride == 0) sample_trajectory(rec);
        }
        rec.evaluations_to_optimum = found_at_;
        rec.plateau_arrival_evaluation = plateau_at_;
        rec.evaluations_used = evaluations_;
        rec.final_population_digest = population_digest(pop_);
        return rec;
    }

private:
    GaRun(const GaConfig& cfg, Obj objective, const std::vector<BitString>* seeded)
        : cfg_(cfg),
          obj_(std::move(objective)),
          rng_(cfg.seed),
          rate_(cfg.chi, cfg.n),
          sharing_(cfg.resolved_sharing()) {
        cfg_.validate();
        if (cfg_.n != obj_.size())
            throw std::invalid_argument("GaRun: config n must match the objective size");
        if (!is_tie_break_rule(cfg_.mechanism))
            throw std::invalid_argument("GaRun: mechanism is not a tie-breaking rule");

        pop_.resize(cfg_.mu);
        if (seeded != nullptr) {
            if (static_cast<int>(seeded->size()) != cfg_.mu)
                throw std::invalid_argument("GaRun: seeded population must have mu members");
            for (int i = 0; i < cfg_.mu; ++i) {
                pop_[i].genotype = (*seeded)[i];
                pop_[i].fitness = obj_.evaluate(pop_[i].genotype);
            }
        } else {
            for (int i = 0; i < cfg_.mu; ++i) {
                pop_[i].genotype = BitString::random(cfg_.n, rng_);
                pop_[i].fitness = obj_.evaluate(pop_[i].genotype);
                ++evaluations_;
            }
        }

        buckets_.assign(static_cast<std::size_t>(obj_.max_fitness()) + 1, {});
        pos_in_bucket_.assign(cfg_.mu, 0);
        min_fitness_ = obj_.max_fitness();
        best_fitness_ = 0;
        plateau_members_ = 0;
        for (int i = 0; i < cfg_.mu; ++i) {
            const int f = pop_[i].fitness;
            pos_in_bucket_[i] = static_cast<std::uint32_t>(buckets_[f].size());
            buckets_[f].push_back(static_cast<std::uint32_t>(i));
            min_fitness_ = std::min(min_fitness_, f);
            best_fitness_ = std::max(best_fitness_, f);
            if (obj_.is_plateau_or_optimum_fitness(f)) ++plateau_members_;
            if (!found_at_ && obj_.is_optimum_fitness(f)) found_at_ = evaluations_;
        }
        if (plateau_members_ == cfg_.mu) plateau_at_ = evaluations_;

        species_.reset(pop_);
        dist_active_ = cfg_.mechanism == Mechanism::TotalHammingMax ||
                       cfg_.mechanism == Mechanism::FitnessSharing;
        counts_active_ = cfg_.mechanism == Mechanism::ConvexHullMax;
        if (dist_active_) {
            dist_.reset(pop_);
            child_row_.assign(cfg_.mu, 0);
        }
        if (counts_active_) counts_.reset(pop_, static_cast<std::size_t>(cfg_.n));
        child_ = BitString(static_cast<std::size_t>(cfg_.n));
        candidates_.reserve(cfg_.mu + 1);
    }

    PoolView make_pool(int f_child) {
        PoolView pool;
        pool.population = pop_;
        offspring_view_ = Individual{child_, f_child};
        pool.offspring = &offspring_view_;
        pool.species = &species_;
        if (dist_active_) {
            pool.distances = &dist_;
            pool.offspring_distance_row = child_row_;
        }
        if (counts_active_) pool.one_counts = &counts_;
        return pool;
    }

    void compute_child_row() {
        for (int j = 0; j < cfg_.mu; ++j)
            child_row_[j] = hamming_distance(child_, pop_[j].genotype);
    }

    void replace_member(std::size_t victim, int f_child) {
        const int f_old = pop_[victim].fitness;

        auto& old_bucket = buckets_[f_old];
        const std::uint32_t pos = pos_in_bucket_[victim];
        old_bucket[pos] = old_bucket.back();
        pos_in_bucket_[old_bucket[pos]] = pos;
        old_bucket.pop_back();
        auto& new_bucket = buckets_[f_child];
        pos_in_bucket_[victim] = static_cast<std::uint32_t>(new_bucket.size());
        new_bucket.push_back(static_cast<std::uint32_t>(victim));

        if (f_child < min_fitness_) {
            min_fitness_ = f_child;
        } else if (f_old == min_fitness_) {
            while (buckets_[min_fitness_].empty()) ++min_fitness_;
        }
        // Elitism: the maximum fitness never decreases.
        assert(f_child >= best_fitness_ || !buckets_[best_fitness_].empty());
        best_fitness_ = std::max(best_fitness_, f_child);

        if (obj_.is_plateau_or_optimum_fitness(f_old)) --plateau_members_;
        if (obj_.is_plateau_or_optimum_fitness(f_child)) ++plateau_members_;

        species_.remove(pop_[victim].genotype);
        species_.add(child_);
        if (dist_active_) dist_.replace(victim, child_row_);
        if (counts_active_) counts_.replace(pop_[victim].genotype, child_);

        pop_[victim].genotype = child_;
        pop_[victim].fitness = f_child;

        if (plateau_members_ == cfg_.mu && !plateau_at_) plateau_at_ = evaluations_;
    }

    void sample_trajectory(RunRecord& rec) const {
        rec.trajectory.push_back({evaluations_, species_.largest(), species_.distinct()});
    }

    /// Full from-scratch cross-check of the incremental structures.
    void check_invariants() const {
        auto fail = [](const char* what) {
            throw std::logic_error(std::string("GaRun self-check failed: ") + what);
        };
        int min_f = obj_.max_fitness();
        int max_f = 0;
        int plateau = 0;
        for (int i = 0; i < cfg_.mu; ++i) {
            const auto& m = pop_[i];
            if (obj_.evaluate(m.genotype) != m.fitness) fail("cached fitness");
            min_f = std::min(min_f, m.fitness);
            max_f = std::max(max_f, m.fitness);
            if (obj_.is_plateau_or_optimum_fitness(m.fitness)) ++plateau;
            const auto& bucket = buckets_[m.fitness];
            if (pos_in_bucket_[i] >= bucket.size() ||
                bucket[pos_in_bucket_[i]] != static_cast<std::uint32_t>(i))
                fail("bucket index");
        }
        if (min_f != min_fitness_) fail("min fitness");
        if (max_f != best_fitness_) fail("best fitness");
        if (plateau != plateau_members_) fail("plateau count");

        const SpeciesPartition part = partition_species(pop_);
        if (part.largest != species_.largest() || part.count != species_.distinct())
            fail("species tracker");

        if (dist_active_) {
            for (int i = 0; i < cfg_.mu; ++i) {
                std::int64_t row = 0;
                for (int j = 0; j < cfg_.mu; ++j) {
                    const int d = hamming_distance(pop_[i].genotype, pop_[j].genotype);
                    if (dist_.distance(i, j) != d) fail("distance matrix");
                    row += d;
                }
                if (dist_.row_sum(i) != row) fail("distance row sum");
            }
        }
        if (counts_active_) {
            for (int i = 0; i < cfg_.n; ++i) {
                int c = 0;
                for (const auto& m : pop_)
                    if (m.genotype.bit(i)) ++c;
                if (counts_.counts()[i] != c) fail("position counts");
            }
        }
    }

    GaConfig cfg_;
    Obj obj_;
    RandomSource rng_;
    MutationRate rate_;
    SharingParams sharing_;

    Population pop_;
    std::vector<std::vector<std::uint32_t>> buckets_;
    std::vector<std::uint32_t> pos_in_bucket_;
    int min_fitness_ = 0;
    int best_fitness_ = 0;
    int plateau_members_ = 0;

    SpeciesTracker species_;
    DistanceCache dist_;
    PositionCounts counts_;
    bool dist_active_ = false;
    bool counts_active_ = false;

    std::int64_t evaluations_ = 0;
    std::int64_t steps_ = 0;
    std::optional<std::int64_t> found_at_;
    std::optional<std::int64_t> plateau_at_;

    BitString child_;
    std::vector<int> child_row_;
    std::vector<std::size_t> candidates_;
    Individual offspring_view_;
};

/// Runs the (mu+1) GA on Jump with the configured tie-breaking rule.
inline RunRecord run_ga(const GaConfig& cfg) {
    GaRun<JumpK> run(cfg, JumpK(cfg.n, cfg.k));
    return run.run();
}

} // namespace jumpga
