#include "sandrank/theory.hpp"

#include "sandrank/bigraph.hpp"
#include "sandrank/errors.hpp"
#include "sandrank/prime_field_matrix.hpp"

#include <cmath>
#include <numbers>

namespace sandrank::theory {

namespace {

void require_prime(std::uint64_t p) {
    if (!gfp::is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
}

void require_probability(const Rational& q) {
    if (q < 0 || q > 1) throw InvalidParams("probability outside [0, 1]: " + q.get_str());
}

mpz_class binomial_coefficient(std::size_t n, std::size_t k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return c;
}

mpz_class power(const mpz_class& base, std::size_t e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational pmf_unchecked(std::size_t n, const Rational& q, std::size_t k) {
    // q = a / b in lowest terms: C(n, k) a^k (b - a)^(n - k) / b^n.
    const mpz_class& a = q.get_num();
    const mpz_class& b = q.get_den();
    Rational out(binomial_coefficient(n, k) * power(a, k) * power(b - a, n - k), power(b, n));
    out.canonicalize();
    return out;
}

Rational floor_of(const Rational& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(f);
}

} // namespace

BinomialSpec::BinomialSpec(std::size_t n, Rational prob) : n_(n), prob_(std::move(prob)) {
    prob_.canonicalize();
    require_probability(prob_);
}

BinomialSpec::BinomialSpec(std::size_t n, double prob) : BinomialSpec(n, Rational(prob)) {}

BinomialSpec BinomialSpec::reciprocal(std::size_t n, std::uint64_t p) {
    if (p == 0) throw InvalidParams("reciprocal of zero");
    return BinomialSpec(n, Rational(1, static_cast<unsigned long>(p)));
}

Rational exact_alpha_n(std::size_t n, double alpha) {
    const double product = alpha * static_cast<double>(n);
    const double nearest = std::round(product);
    if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, std::abs(product)))
        return Rational(static_cast<unsigned long>(nearest));
    return Rational(alpha) * static_cast<unsigned long>(n);
}

Rational binom_pmf_exact(const BinomialSpec& spec, std::int64_t k) {
    if (k < 0 || static_cast<std::size_t>(k) > spec.n())
        throw OutOfSupport("k = " + std::to_string(k) + " outside [0, " + std::to_string(spec.n()) + "]");
    return pmf_unchecked(spec.n(), spec.prob(), static_cast<std::size_t>(k));
}

double binom_pmf(const BinomialSpec& spec, std::int64_t k) { return binom_pmf_exact(spec, k).get_d(); }

Rational binom_tail_gt_exact(const BinomialSpec& spec, std::int64_t s) {
    if (s < 0) return 1;
    Rational sum = 0;
    for (std::size_t k = static_cast<std::size_t>(s) + 1; k <= spec.n(); ++k)
        sum += pmf_unchecked(spec.n(), spec.prob(), k);
    return sum;
}

double binom_tail_gt(const BinomialSpec& spec, std::int64_t s) { return binom_tail_gt_exact(spec, s).get_d(); }

Rational conditional_mean_above_exact(std::size_t n, const Rational& alpha, std::int64_t s) {
    if (n == 0) throw InvalidParams("conditional mean needs n >= 1");
    if (s < 0) throw InvalidParams("threshold s must be non-negative");
    require_probability(alpha);
    const BinomialSpec full(n, alpha);
    const Rational tail = binom_tail_gt_exact(full, s);
    if (static_cast<std::size_t>(s) >= n || tail == 0)
        throw EmptyConditioningEvent("P(B(" + std::to_string(n) + ", alpha) > " + std::to_string(s) + ") = 0");
    const Rational point = pmf_unchecked(n - 1, alpha, static_cast<std::size_t>(s));
    const Rational nn(static_cast<unsigned long>(n));
    Rational out = alpha * nn + alpha * (1 - alpha) * nn * point / tail;
    out.canonicalize();
    return out;
}

double conditional_mean_above(std::size_t n, double alpha, std::int64_t s) {
    return conditional_mean_above_exact(n, Rational(alpha), s).get_d();
}

Rational expected_excess_rational(std::size_t n, double alpha_cut, std::uint64_t p) {
    require_prime(p);
    if (alpha_cut < 0) throw InvalidParams("alpha_cut must be non-negative");
    const Rational cut = exact_alpha_n(n, alpha_cut);
    const Rational q(1, static_cast<unsigned long>(p));
    const Rational start = floor_of(cut) + 1;
    Rational sum = 0;
    for (std::size_t k = static_cast<std::size_t>(start.get_num().get_ui()); k <= n; ++k)
        sum += (Rational(static_cast<unsigned long>(k)) - cut) * pmf_unchecked(n, q, k);
    return sum;
}

double expected_excess_exact(std::size_t n, double alpha_cut, std::uint64_t p) {
    return expected_excess_rational(n, alpha_cut, p).get_d();
}

std::string to_string(Regime r) {
    switch (r) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
    }
    return "unknown";
}

AsymptoticRank expected_rank_asymptotic(std::size_t n, double alpha, std::uint64_t p) {
    require_prime(p);
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must lie in (0, 1]");
    const double inv_p = 1.0 / static_cast<double>(p);
    const double nn = static_cast<double>(n);
    if (std::abs(alpha - inv_p) <= 1e-12)
        return {std::sqrt(inv_p * (1.0 - inv_p) * nn / (2.0 * std::numbers::pi)), Regime::critical};
    if (alpha < inv_p) return {(inv_p - alpha) * nn, Regime::subcritical};
    return {0.0, Regime::supercritical};
}

// ---------------------------------------------------------------------------
// RankDistribution

double RankDistribution::mean() const { return exact_mean().get_d(); }

Rational RankDistribution::exact_mean() const {
    Rational m = 0;
    for (std::size_t j = 1; j < exact.size(); ++j) m += exact[j] * static_cast<unsigned long>(j);
    return m;
}

double RankDistribution::cdf(std::int64_t k) const {
    if (k < 0) return 0.0;
    Rational c = 0;
    for (std::size_t j = 0; j < exact.size() && j <= static_cast<std::size_t>(k); ++j) c += exact[j];
    return c.get_d();
}

std::size_t RankDistribution::quantile(double u) const {
    double c = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        c += pmf[j];
        if (c >= u) return j;
    }
    return pmf.empty() ? 0 : pmf.size() - 1;
}

RankDistribution truncated_binomial_law(std::size_t trials, std::size_t cut, std::uint64_t p) {
    require_prime(p);
    RankDistribution d;
    d.n = trials;
    d.p = p;
    d.offset = cut;
    const Rational q(1, static_cast<unsigned long>(p));
    Rational at_zero = 0;
    for (std::size_t k = 0; k <= std::min(cut, trials); ++k) at_zero += pmf_unchecked(trials, q, k);
    d.exact.push_back(at_zero);
    for (std::size_t k = cut + 1; k <= trials; ++k) d.exact.push_back(pmf_unchecked(trials, q, k));
    d.pmf.reserve(d.exact.size());
    for (const auto& e : d.exact) d.pmf.push_back(e.get_d());
    return d;
}

RankDistribution rank_pmf_theoretical(std::size_t n, double alpha, std::uint64_t p) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must lie in (0, 1]");
    RankDistribution d = truncated_binomial_law(n, graph::side_size(n, alpha), p);
    d.alpha = alpha;
    return d;
}

// ---------------------------------------------------------------------------

double dml_estimate(std::size_t n, double alpha, std::int64_t s) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParams("alpha must lie in (0, 1)");
    const double nn = static_cast<double>(n);
    const double center = alpha * nn;
    const double gap = static_cast<double>(s) - center;
    if (!(std::abs(gap) < std::sqrt(nn)))
        throw OutOfRange("|alpha n - s| must be below sqrt(n)");
    const double variance = alpha * (1.0 - alpha) * nn;
    return std::exp(-gap * gap / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double hoeffding_bound(std::size_t n, double q, double eps) {
    if (!(eps > 0.0)) throw InvalidParams("eps must be positive");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidParams("q outside [0, 1]");
    return 2.0 * std::exp(-2.0 * eps * eps * static_cast<double>(n));
}

double min_entropy_rank_bound(std::size_t n, std::size_t m, double beta) {
    if (m < n) throw InvalidShape("bound needs m >= n");
    if (!(beta > 0.0 && beta < 1.0)) throw InvalidParams("beta must lie in (0, 1)");
    const double bound =
        1.0 - std::pow(1.0 - beta, static_cast<double>(m + 1 - n)) / (beta * beta);
    return std::max(0.0, bound);
}

Rational uniform_full_rank_probability(std::size_t n, std::size_t m, std::uint64_t p) {
    if (m < n) throw InvalidShape("full row rank needs m >= n");
    require_prime(p);
    Rational prod = 1;
    const mpz_class base(static_cast<unsigned long>(p));
    for (std::size_t i = m - n + 1; i <= m; ++i) {
        const mpz_class pi = power(base, i);
        prod *= Rational(pi - 1, pi);
    }
    prod.canonicalize();
    return prod;
}

} // namespace sandrank::theory
