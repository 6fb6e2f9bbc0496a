#pragma once

#include <stdexcept>

#include "jumpga/bitstring.hpp"

namespace jumpga {

enum class PointClass { Slope, Plateau, Gap, Optimum };

/// Jump objective with gap length k: fitness rises with the number of
/// 1-bits up to the plateau at n-k ones, drops inside the gap, and peaks
/// at the unique all-ones optimum with value n+k.
class JumpK {
public:
    JumpK(int n, int k) : n_(n), k_(k) {
        if (n < 1) throw std::invalid_argument("JumpK: n must be positive");
        if (k < 1 || k > n) throw std::invalid_argument("JumpK: require 1 <= k <= n");
    }

    int n() const { return n_; }
    int k() const { return k_; }
    int size() const { return n_; }

    int evaluate_ones(int ones) const {
        if (ones == n_ || ones <= n_ - k_) return k_ + ones;
        return n_ - ones;
    }

    int evaluate(const BitString& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("JumpK::evaluate: length mismatch");
        return evaluate_ones(x.ones_count());
    }

    PointClass classify_ones(int ones) const {
        if (ones == n_) return PointClass::Optimum;
        if (ones == n_ - k_) return PointClass::Plateau;
        if (ones > n_ - k_) return PointClass::Gap;
        return PointClass::Slope;
    }

    PointClass classify(const BitString& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("JumpK::classify: length mismatch");
        return classify_ones(x.ones_count());
    }

    int max_fitness() const { return n_ + k_; }
    bool is_optimum_fitness(int fitness) const { return fitness == n_ + k_; }
    // Plateau members are exactly the fitness-n points: slope values stay
    // below n and gap values stay below k.
    bool is_plateau_or_optimum_fitness(int fitness) const {
        return fitness == n_ || fitness == n_ + k_;
    }

private:
    int n_;
    int k_;
};

/// Counts 1-bits. Used only in engine unit tests.
struct OneMax {
    int n_;

    explicit OneMax(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("OneMax: n must be positive");
    }

    int n() const { return n_; }
    int size() const { return n_; }

    int evaluate(const BitString& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("OneMax::evaluate: length mismatch");
        return x.ones_count();
    }

    int max_fitness() const { return n_; }
    bool is_optimum_fitness(int fitness) const { return fitness == n_; }
    bool is_plateau_or_optimum_fitness(int fitness) const { return fitness == n_; }
};

} // namespace jumpga
