#pragma once

// Closed-form predictions for the p-rank of bipartite sandpile groups and the
// binomial machinery behind them.
//
// Every probability with a rational parameter is computed exactly in mpq
// arithmetic and only rounded to double at the boundary. A double parameter
// is converted to the rational it denotes exactly (doubles are dyadic), so
// the "approximate" entry points are exact evaluations at that value.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sandrank::theory {

using Rational = mpq_class;

/// B(n, prob).
class BinomialSpec {
public:
    BinomialSpec(std::size_t n, Rational prob);
    BinomialSpec(std::size_t n, double prob);
    /// B(n, 1/p).
    static BinomialSpec reciprocal(std::size_t n, std::uint64_t p);

    std::size_t n() const noexcept { return n_; }
    const Rational& prob() const noexcept { return prob_; }

private:
    std::size_t n_;
    Rational prob_;
};

/// alpha * n as an exact rational; snaps to the nearest integer when the
/// double product is within rounding of one, matching graph::side_size.
Rational exact_alpha_n(std::size_t n, double alpha);

/// P(B = k). Throws OutOfSupport unless 0 <= k <= n.
Rational binom_pmf_exact(const BinomialSpec& spec, std::int64_t k);
double binom_pmf(const BinomialSpec& spec, std::int64_t k);

/// P(B > s); 1 for s < 0, 0 for s >= n.
Rational binom_tail_gt_exact(const BinomialSpec& spec, std::int64_t s);
double binom_tail_gt(const BinomialSpec& spec, std::int64_t s);

/// E(B(n, alpha) | B(n, alpha) > s) via the closed form
///   alpha n + alpha (1 - alpha) n P(B(n-1, alpha) = s) / P(B(n, alpha) > s).
/// Throws EmptyConditioningEvent if s >= n and InvalidParams if s < 0 or n = 0.
Rational conditional_mean_above_exact(std::size_t n, const Rational& alpha, std::int64_t s);
double conditional_mean_above(std::size_t n, double alpha, std::int64_t s);

/// E(max(B(n, 1/p) - alpha_cut n, 0)), summing (k - alpha_cut n) P(B = k) over
/// k > floor(alpha_cut n).
Rational expected_excess_rational(std::size_t n, double alpha_cut, std::uint64_t p);
double expected_excess_exact(std::size_t n, double alpha_cut, std::uint64_t p);

enum class Regime { subcritical, critical, supercritical };
std::string to_string(Regime r);

struct AsymptoticRank {
    double value = 0.0;
    Regime regime = Regime::subcritical;
};

/// Leading term of the expected p-rank: (1/p - alpha) n below the threshold
/// alpha = 1/p, 0 above it, sqrt((1/p)(1 - 1/p) n / (2 pi)) at it.
AsymptoticRank expected_rank_asymptotic(std::size_t n, double alpha, std::uint64_t p);

/// Law of max(B(n_trials, 1/p) - cut, 0). pmf[j] is the probability of value j.
struct RankDistribution {
    std::size_t n = 0;
    double alpha = 0.0;
    std::uint64_t p = 2;
    std::size_t offset = 0;
    std::vector<Rational> exact;
    std::vector<double> pmf;

    double mean() const;
    Rational exact_mean() const;
    /// P(X <= k).
    double cdf(std::int64_t k) const;
    /// Smallest k with cdf(k) >= u, for u in (0, 1].
    std::size_t quantile(double u) const;
};

/// Predicted p-rank law max(B(n, 1/p) - floor(alpha n), 0).
RankDistribution rank_pmf_theoretical(std::size_t n, double alpha, std::uint64_t p);

/// max(B(trials, 1/p) - cut, 0) for an explicit cut.
RankDistribution truncated_binomial_law(std::size_t trials, std::size_t cut, std::uint64_t p);

/// Gaussian local estimate of P(B(n, alpha) = s). Throws OutOfRange unless
/// |alpha n - s| < sqrt(n).
double dml_estimate(std::size_t n, double alpha, std::int64_t s);

/// 2 exp(-2 eps^2 n): upper bound on P(|B(n, q) - q n| > eps n).
double hoeffding_bound(std::size_t n, double q, double eps);

/// max(0, 1 - beta^-2 (1 - beta)^(m + 1 - n)): lower bound on the probability
/// that an n x m matrix with entry min-entropy beta has full row rank.
/// Throws InvalidShape if m < n.
double min_entropy_rank_bound(std::size_t n, std::size_t m, double beta);

/// Exact probability that a uniform n x m matrix over GF(p) has rank n:
/// prod_{i = m-n+1}^{m} (1 - p^-i).
Rational uniform_full_rank_probability(std::size_t n, std::size_t m, std::uint64_t p);

} // namespace sandrank::theory
