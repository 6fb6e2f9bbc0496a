#pragma once

#include <cstdint>
#include <vector>

#include "jumpga/bitstring.hpp"

namespace jumpga {

/// Population member with cached fitness.
struct Individual {
    BitString genotype;
    int fitness = 0;
};

using Population = std::vector<Individual>;

/// Order-independent digest of a population (genotypes + fitness).
std::uint64_t population_digest(const Population& pop);

} // namespace jumpga
