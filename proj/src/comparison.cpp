#include "sandrank/errors.hpp"
#include "sandrank/experiment.hpp"

#include <algorithm>
#include <cmath>

namespace sandrank::harness {

ComparisonStats compare_to_theory(const std::vector<std::int64_t>& observations,
                                  const theory::RankDistribution& dist) {
    if (observations.empty()) throw EmptyInput("no observations to compare");
    const auto count = static_cast<double>(observations.size());
    std::vector<std::int64_t> sorted = observations;
    std::sort(sorted.begin(), sorted.end());

    ComparisonStats stats;
    double sum = 0.0;
    for (auto x : sorted) sum += static_cast<double>(x);
    stats.mean_gap = std::abs(sum / count - dist.mean());

    // Both laws live on the integers, so W1 is a finite sum of CDF gaps.
    const std::int64_t lo = std::min<std::int64_t>(0, sorted.front());
    const std::int64_t hi =
        std::max<std::int64_t>(sorted.back(), static_cast<std::int64_t>(dist.pmf.size()) - 1);
    std::size_t below = 0;
    double theory_cdf = 0.0;
    for (std::int64_t k = lo; k < hi; ++k) {
        while (below < sorted.size() && sorted[below] <= k) ++below;
        if (k >= 0 && static_cast<std::size_t>(k) < dist.pmf.size()) theory_cdf += dist.pmf[static_cast<std::size_t>(k)];
        stats.wasserstein1 += std::abs(static_cast<double>(below) / count - std::min(theory_cdf, 1.0));
    }

    constexpr int kMaxGap = 10;
    std::vector<std::size_t> exceed(kMaxGap, 0);
    for (std::size_t t = 0; t < sorted.size(); ++t) {
        const double u = (static_cast<double>(t) + 0.5) / count;
        const auto partner = static_cast<std::int64_t>(dist.quantile(u));
        const std::int64_t gap = std::abs(sorted[t] - partner);
        for (int m = 1; m <= kMaxGap && gap >= m; ++m) ++exceed[static_cast<std::size_t>(m - 1)];
    }
    stats.quantile_coupling_tail.reserve(kMaxGap);
    for (auto e : exceed) stats.quantile_coupling_tail.push_back(static_cast<double>(e) / count);

    std::vector<double> xs, ys;
    for (int m = 1; m <= kMaxGap; ++m) {
        const double tail = stats.quantile_coupling_tail[static_cast<std::size_t>(m - 1)];
        if (tail <= 0.0) break;
        xs.push_back(m);
        ys.push_back(std::log(tail));
    }
    if (xs.size() >= 2) {
        const double n = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        stats.fitted_decay_rate = -slope;
    }
    return stats;
}

} // namespace sandrank::harness
