#pragma once

#include <optional>

#include "jumpga/engine.hpp"

namespace jumpga {

/// Single-receiver island model: mu independent (1+1) EA islands plus one
/// receiver island that each round crosses over the best-so-far
/// individuals of two distinct islands chosen uniformly at random.
struct IslandState {
    std::vector<Individual> islands;
    std::optional<Individual> receiver;
    std::int64_t evaluations = 0;
};

class IslandRun {
public:
    IslandRun(const GaConfig& cfg, JumpK objective);

    const IslandState& state() const { return state_; }
    std::int64_t evaluations() const { return state_.evaluations; }
    bool optimum_found() const { return found_at_.has_value(); }
    std::optional<std::int64_t> optimum_evaluation() const { return found_at_; }
    std::optional<std::int64_t> plateau_arrival() const { return plateau_at_; }
    bool optimum_on_receiver() const { return receiver_produced_; }

    /// One synchronous round: each island performs one (1+1) EA step and
    /// the receiver performs one crossover attempt against the bests from
    /// the start of the round. Consumes mu + 1 evaluations.
    void step();

    RunRecord run();

private:
    GaConfig cfg_;
    JumpK obj_;
    RandomSource rng_;
    MutationRate rate_;
    IslandState state_;
    std::optional<std::int64_t> found_at_;
    std::optional<std::int64_t> plateau_at_;
    bool receiver_produced_ = false;
    int plateau_islands_ = 0;
    BitString scratch_;
};

RunRecord run_island_model(const GaConfig& cfg);

/// Dispatches on cfg.mechanism: Island runs the island model, everything
/// else the (mu+1) GA.
RunRecord run_configured(const GaConfig& cfg);

} // namespace jumpga
