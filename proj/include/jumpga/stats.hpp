#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace jumpga {

/// Sample statistics used by the summary CSV and the acceptance suite.
double mean(std::span<const double> values);
double sample_std(std::span<const double> values); // n-1 denominator
double min_value(std::span<const double> values);
double max_value(std::span<const double> values);

/// Linear interpolation between closest ranks (the numpy default);
/// q in [0, 1].
double quantile(std::span<const double> values, double q);
double median(std::span<const double> values);

struct RankSumResult {
    double u;       // Mann-Whitney U of the first sample
    double z;       // normal approximation with tie and continuity correction
    double p_value; // one-sided, H1: first sample stochastically smaller
};

/// One-sided Wilcoxon rank-sum test (Mann-Whitney U), H1: a < b.
RankSumResult wilcoxon_rank_sum_less(std::span<const double> a, std::span<const double> b);

/// Pearson chi-square statistic against given expected counts.
double chi_square_statistic(std::span<const std::int64_t> observed,
                            std::span<const double> expected);

} // namespace jumpga
