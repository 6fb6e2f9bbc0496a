#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "jumpga/population.hpp"

namespace jumpga {

/// Genotype -> multiplicity map over a population. Y is the size of the
/// largest species.
struct SpeciesPartition {
    std::unordered_map<BitString, int, BitStringHash> species;
    int largest = 0;
    int count = 0;
};

SpeciesPartition partition_species(std::span<const Individual> members);

/// Incremental species bookkeeping: O(1) updates of the largest species
/// size and the distinct-species count under single insert/remove, via a
/// multiplicity histogram.
class SpeciesTracker {
public:
    void reset(std::span<const Individual> members) {
        species_.clear();
        histogram_.assign(members.size() + 2, 0);
        largest_ = 0;
        for (const auto& m : members) add(m.genotype);
    }

    void add(const BitString& genotype) {
        int& mult = species_[genotype];
        if (mult > 0) --histogram_[mult];
        ++mult;
        if (static_cast<std::size_t>(mult) >= histogram_.size()) histogram_.resize(mult + 1, 0);
        ++histogram_[mult];
        if (mult > largest_) largest_ = mult;
    }

    void remove(const BitString& genotype) {
        auto it = species_.find(genotype);
        int& mult = it->second;
        --histogram_[mult];
        --mult;
        if (mult == 0)
            species_.erase(it);
        else
            ++histogram_[mult];
        while (largest_ > 0 && histogram_[largest_] == 0) --largest_;
    }

    int largest() const { return largest_; }
    int distinct() const { return static_cast<int>(species_.size()); }
    int multiplicity(const BitString& genotype) const {
        auto it = species_.find(genotype);
        return it == species_.end() ? 0 : it->second;
    }

private:
    std::unordered_map<BitString, int, BitStringHash> species_;
    std::vector<int> histogram_; // histogram_[m] = number of species with multiplicity m
    int largest_ = 0;
};

} // namespace jumpga
