#include "doctest.h"

#include "sandrank/errors.hpp"
#include "sandrank/oracles.hpp"
#include "sandrank/rng.hpp"
#include "sandrank/theory.hpp"

#include <cmath>
#include <numbers>

using namespace sandrank;
using namespace sandrank::theory;

TEST_CASE("binomial pmf") {
    CHECK(binom_pmf_exact(BinomialSpec(1, Rational(2, 7)), 1) == Rational(2, 7));
    CHECK(binom_pmf(BinomialSpec(1, 0.3), 1) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(binom_pmf_exact(BinomialSpec(2, Rational(1, 2)), 1) == Rational(1, 2));
    CHECK(binom_pmf_exact(BinomialSpec(4, Rational(1, 2)), 2) == Rational(3, 8));
    CHECK(binom_pmf_exact(BinomialSpec::reciprocal(3, 3), 0) == Rational(8, 27));
    CHECK_THROWS_AS(binom_pmf(BinomialSpec(4, 0.5), 5), OutOfSupport);
    CHECK_THROWS_AS(binom_pmf(BinomialSpec(4, 0.5), -1), OutOfSupport);
    CHECK_THROWS_AS(BinomialSpec(4, 1.5), InvalidParams);
}

TEST_CASE("binomial tail") {
    const BinomialSpec b(2, Rational(1, 2));
    CHECK(binom_tail_gt_exact(b, -1) == 1);
    CHECK(binom_tail_gt_exact(b, 2) == 0);
    CHECK(binom_tail_gt_exact(b, 1) == Rational(1, 4));
}

TEST_CASE("conditional mean closed form") {
    CHECK(conditional_mean_above_exact(2, Rational(1, 2), 1) == 2);
    const Rational a(3, 10);
    const Rational closed = conditional_mean_above_exact(10, a, 3);
    CHECK(closed == oracle::conditional_mean_by_summation(10, a, 3));
    CHECK(conditional_mean_above(10, 0.3, 3) ==
          doctest::Approx(oracle::conditional_mean_by_summation(10, a, 3).get_d()).epsilon(1e-12));
    CHECK_THROWS_AS(conditional_mean_above(1, 0.4, 1), EmptyConditioningEvent);
    CHECK_THROWS_AS(conditional_mean_above(5, 0.4, -1), InvalidParams);
    // s = 0 is outside the positive-s statement but the identity still holds.
    CHECK(conditional_mean_above_exact(6, Rational(1, 3), 0) ==
          oracle::conditional_mean_by_summation(6, Rational(1, 3), 0));
}

TEST_CASE("conditional mean identity over a grid") {
    const Rational alphas[] = {{1, 5}, {2, 5}, {1, 2}, {3, 5}, {4, 5}};
    for (const auto& a : alphas)
        for (std::size_t n = 2; n <= 40; n += 3)
            for (std::int64_t s = 1; s < static_cast<std::int64_t>(n); ++s)
                CHECK(conditional_mean_above_exact(n, a, s) == oracle::conditional_mean_by_summation(n, a, s));
}

TEST_CASE("expected excess") {
    CHECK(expected_excess_exact(4, 0.5, 2) == 0.375);
    CHECK(expected_excess_rational(4, 0.5, 2) == Rational(3, 8));
    CHECK(expected_excess_exact(0, 0.3, 2) == 0.0);
    CHECK(expected_excess_exact(100, 0.0, 2) == doctest::Approx(50.0).epsilon(1e-14));
    // Against the mean of the truncated law when alpha n is an integer.
    for (auto [n, alpha, p] : {std::tuple<std::size_t, double, std::uint64_t>{40, 0.25, 2}, {60, 0.5, 3}, {30, 0.1, 5}, {64, 0.125, 2}})
        CHECK(expected_excess_rational(n, alpha, p) == rank_pmf_theoretical(n, alpha, p).exact_mean());
}

TEST_CASE("asymptotic expected rank") {
    const auto sub = expected_rank_asymptotic(200, 0.25, 2);
    CHECK(sub.value == doctest::Approx(50.0));
    CHECK(sub.regime == Regime::subcritical);
    CHECK(to_string(sub.regime) == "subcritical");
    const auto super = expected_rank_asymptotic(100, 0.75, 2);
    CHECK(super.value == 0.0);
    CHECK(to_string(super.regime) == "supercritical");
    const auto crit = expected_rank_asymptotic(400, 0.5, 2);
    CHECK(crit.regime == Regime::critical);
    CHECK(crit.value == doctest::Approx(3.9894).epsilon(1e-4));
    CHECK(expected_rank_asymptotic(300, 1.0 / 3.0, 3).regime == Regime::critical);
}

TEST_CASE("predicted rank law") {
    const auto all = rank_pmf_theoretical(2, 1.0, 2);
    REQUIRE(all.pmf.size() >= 1);
    CHECK(all.exact[0] == 1);
    const auto half = rank_pmf_theoretical(2, 0.5, 2);
    REQUIRE(half.exact.size() == 2);
    CHECK(half.exact[0] == Rational(3, 4));
    CHECK(half.exact[1] == Rational(1, 4));
    CHECK(half.offset == 1);
    CHECK(half.cdf(0) == 0.75);
    CHECK(half.quantile(0.75) == 0);
    CHECK(half.quantile(0.76) == 1);
    for (auto [n, alpha, p] : {std::tuple<std::size_t, double, std::uint64_t>{100, 0.25, 2}, {400, 0.5, 2}, {57, 0.3, 3}, {90, 0.9, 7}}) {
        const auto d = rank_pmf_theoretical(n, alpha, p);
        Rational total = 0;
        for (const auto& x : d.exact) total += x;
        CHECK(total == 1);
        double dtotal = 0;
        for (double x : d.pmf) dtotal += x;
        CHECK(std::abs(dtotal - 1.0) <= 1e-12);
        CHECK(d.pmf.size() <= n + 1);
    }
    const auto law = truncated_binomial_law(10, 3, 2);
    CHECK(law.offset == 3);
    CHECK(law.pmf.size() == 8);
}

TEST_CASE("Gaussian local estimate") {
    CHECK(dml_estimate(100, 0.5, 50) == doctest::Approx(1.0 / std::sqrt(50.0 * std::numbers::pi)).epsilon(1e-12));
    const double exact = binom_pmf(BinomialSpec(100, Rational(1, 2)), 50);
    CHECK(exact == doctest::Approx(0.0795892).epsilon(1e-6));
    CHECK(std::abs(dml_estimate(100, 0.5, 50) - exact) / exact == doctest::Approx(0.0025).epsilon(0.02));
    CHECK_THROWS_AS(dml_estimate(100, 0.5, 70), OutOfRange);
    const double big = binom_pmf(BinomialSpec(10000, Rational(1, 2)), 5000);
    CHECK(std::abs(dml_estimate(10000, 0.5, 5000) - big) / big <= 10.0 / 100.0);
}

TEST_CASE("Hoeffding bound") {
    CHECK(hoeffding_bound(0, 0.5, 0.1) == 2.0);
    CHECK(hoeffding_bound(100, 0.5, 0.1) == doctest::Approx(2 * std::exp(-2.0)));
    CHECK_THROWS_AS(hoeffding_bound(10, 0.5, 0.0), InvalidParams);
    RandomStream rng(31);
    const std::size_t n = 200, trials = 20000;
    std::size_t outside = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) k += rng.bernoulli(0.5);
        outside += std::abs(static_cast<double>(k) - 100.0) > 20.0;
    }
    CHECK(static_cast<double>(outside) / trials <= hoeffding_bound(n, 0.5, 0.1));
}

TEST_CASE("min-entropy rank bound") {
    CHECK(min_entropy_rank_bound(5, 5, 0.5) == 0.0);
    CHECK(min_entropy_rank_bound(3, 13, 0.5) == doctest::Approx(1.0 - 1.0 / 512).epsilon(1e-14));
    const auto exact = uniform_full_rank_probability(3, 13, 2);
    const Rational product = Rational(2047, 2048) * Rational(4095, 4096) * Rational(8191, 8192);
    CHECK(exact == product);
    CHECK(exact.get_d() == doctest::Approx(0.999146).epsilon(1e-6));
    CHECK(exact.get_d() >= min_entropy_rank_bound(3, 13, 0.5));
    CHECK_THROWS_AS(min_entropy_rank_bound(4, 3, 0.5), InvalidShape);
    CHECK(uniform_full_rank_probability(2, 3, 2) == oracle::full_rank_fraction_by_enumeration(2, 3, 2));
    CHECK(uniform_full_rank_probability(2, 2, 3) == oracle::full_rank_fraction_by_enumeration(2, 2, 3));
}
