#include "jumpga/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace jumpga {

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean: empty sample");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double min_value(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("min: empty sample");
    return *std::min_element(values.begin(), values.end());
}

double max_value(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("max: empty sample");
    return *std::max_element(values.begin(), values.end());
}

double quantile(std::span<const double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q must be in [0,1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

RankSumResult wilcoxon_rank_sum_less(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("rank-sum test: empty sample");
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const std::size_t total = m + n;

    struct Entry {
        double value;
        bool from_a;
    };
    std::vector<Entry> pooled;
    pooled.reserve(total);
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Entry& x, const Entry& y) { return x.value < y.value; });

    // Average ranks within tie groups; accumulate the tie correction.
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < total) {
        std::size_t j = i;
        while (j < total && pooled[j].value == pooled[i].value) ++j;
        const double t = static_cast<double>(j - i);
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t r = i; r < j; ++r)
            if (pooled[r].from_a) rank_sum_a += avg_rank;
        tie_term += t * t * t - t;
        i = j;
    }

    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double u = rank_sum_a - md * (md + 1.0) / 2.0;
    const double mu_u = md * nd / 2.0;
    const double total_d = static_cast<double>(total);
    const double variance =
        md * nd / 12.0 * ((total_d + 1.0) - tie_term / (total_d * (total_d - 1.0)));

    if (variance <= 0.0) return {u, 0.0, 1.0};
    const double z = (u - mu_u + 0.5) / std::sqrt(variance);
    const double p = 0.5 * std::erfc(-z / std::sqrt(2.0));
    return {u, z, p};
}

double chi_square_statistic(std::span<const std::int64_t> observed,
                            std::span<const double> expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi-square: size mismatch");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw std::invalid_argument("chi-square: expected count <= 0");
        const double diff = static_cast<double>(observed[i]) - expected[i];
        stat += diff * diff / expected[i];
    }
    return stat;
}

} // namespace jumpga
