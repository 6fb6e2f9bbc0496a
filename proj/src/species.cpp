#include "jumpga/species.hpp"

#include <algorithm>

namespace jumpga {

SpeciesPartition partition_species(std::span<const Individual> members) {
    SpeciesPartition part;
    for (const auto& m : members) {
        const int mult = ++part.species[m.genotype];
        part.largest = std::max(part.largest, mult);
    }
    part.count = static_cast<int>(part.species.size());
    return part;
}

std::uint64_t population_digest(const Population& pop) {
    std::vector<std::uint64_t> hashes;
    hashes.reserve(pop.size());
    const BitStringHash hasher;
    for (const auto& m : pop)
        hashes.push_back(mix64(hasher(m.genotype) ^ static_cast<std::uint64_t>(m.fitness)));
    std::sort(hashes.begin(), hashes.end());
    std::uint64_t digest = 0xcbf29ce484222325ULL;
    for (std::uint64_t h : hashes) {
        digest ^= h;
        digest *= 0x100000001b3ULL;
    }
    return digest;
}

} // namespace jumpga
