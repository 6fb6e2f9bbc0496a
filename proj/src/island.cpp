#include "jumpga/island.hpp"

namespace jumpga {

IslandRun::IslandRun(const GaConfig& cfg, JumpK objective)
    : cfg_(cfg),
      obj_(objective),
      rng_(cfg.seed),
      rate_(cfg.chi, cfg.n),
      scratch_(static_cast<std::size_t>(cfg.n)) {
    cfg_.validate();
    if (cfg_.mu < 2)
        throw std::invalid_argument("island model: the receiver needs at least two islands");
    if (cfg_.n != obj_.size())
        throw std::invalid_argument("island model: config n must match the objective size");

    state_.islands.resize(cfg_.mu);
    for (auto& island : state_.islands) {
        island.genotype = BitString::random(cfg_.n, rng_);
        island.fitness = obj_.evaluate(island.genotype);
        ++state_.evaluations;
        if (!found_at_ && obj_.is_optimum_fitness(island.fitness))
            found_at_ = state_.evaluations;
        if (obj_.is_plateau_or_optimum_fitness(island.fitness)) ++plateau_islands_;
    }
    if (plateau_islands_ == cfg_.mu) plateau_at_ = state_.evaluations;
}

void IslandRun::step() {
    const std::size_t mu = state_.islands.size();

    // The receiver reads the bests from the start of the round: pick the
    // pair and build its offspring before the islands advance.
    std::size_t a = rng_.next_index(mu);
    std::size_t b = rng_.next_index(mu - 1);
    if (b >= a) ++b; // two distinct islands
    uniform_crossover_into(scratch_, state_.islands[a].genotype, state_.islands[b].genotype,
                           rng_);
    if (cfg_.island_receiver_mutation) mutate_in_place(scratch_, rate_, rng_);
    BitString receiver_offspring = scratch_;

    // One (1+1) EA step per island; the offspring survives a fitness tie
    // with probability 1/2.
    for (auto& island : state_.islands) {
        scratch_ = island.genotype;
        mutate_in_place(scratch_, rate_, rng_);
        const int f = obj_.evaluate(scratch_);
        ++state_.evaluations;
        if (!found_at_ && obj_.is_optimum_fitness(f)) found_at_ = state_.evaluations;
        if (f > island.fitness || (f == island.fitness && rng_.next_index(2) == 0)) {
            if (obj_.is_plateau_or_optimum_fitness(f) &&
                !obj_.is_plateau_or_optimum_fitness(island.fitness))
                ++plateau_islands_;
            island.genotype = scratch_;
            island.fitness = f;
        }
    }

    const int f_recv = obj_.evaluate(receiver_offspring);
    ++state_.evaluations;
    if (!found_at_ && obj_.is_optimum_fitness(f_recv)) {
        found_at_ = state_.evaluations;
        receiver_produced_ = true;
    }
    // The receiver keeps strict improvements only.
    if (!state_.receiver || f_recv > state_.receiver->fitness)
        state_.receiver = Individual{std::move(receiver_offspring), f_recv};

    if (plateau_islands_ == cfg_.mu && !plateau_at_) plateau_at_ = state_.evaluations;
}

RunRecord IslandRun::run() {
    while (!found_at_ && state_.evaluations < cfg_.max_evaluations) step();
    RunRecord rec;
    rec.evaluations_to_optimum = found_at_;
    rec.plateau_arrival_evaluation = plateau_at_;
    rec.evaluations_used = state_.evaluations;
    Population all = state_.islands;
    if (state_.receiver) all.push_back(*state_.receiver);
    rec.final_population_digest = population_digest(all);
    rec.optimum_on_receiver = receiver_produced_;
    return rec;
}

RunRecord run_island_model(const GaConfig& cfg) {
    IslandRun run(cfg, JumpK(cfg.n, cfg.k));
    return run.run();
}

RunRecord run_configured(const GaConfig& cfg) {
    if (cfg.mechanism == Mechanism::Island) return run_island_model(cfg);
    return run_ga(cfg);
}

} // namespace jumpga
