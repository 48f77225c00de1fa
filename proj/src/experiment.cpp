#include "sandrank/experiment.hpp"

#include "sandrank/bigraph.hpp"
#include "sandrank/errors.hpp"
#include "sandrank/reduction.hpp"
#include "sandrank/rng.hpp"
#include "sandrank/sandpile.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace sandrank::harness {

namespace {

const char* kVersionTag = "sandrank " SANDRANK_VERSION;

// Runs body(t) for t in [0, trials) on `threads` workers and returns the
// observations in trial order.
template <typename Body>
std::vector<std::int64_t> run_trials(std::size_t trials, unsigned threads, Body body) {
    std::vector<std::int64_t> out(trials, 0);
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                out[t] = body(t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(trials);
                return;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

void require_kind(const ExperimentConfig& cfg, ExperimentKind kind) {
    if (cfg.kind != kind)
        throw InvalidConfig("experiment expects kind " + to_string(kind) + ", got " + to_string(cfg.kind));
    cfg.validate();
}

ExperimentResult start_result(const ExperimentConfig& cfg) {
    ExperimentResult r;
    r.config = cfg;
    r.version = kVersionTag;
    r.trial_seeds.reserve(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) r.trial_seeds.push_back(derive_seed(cfg.master_seed, t));
    return r;
}

graph::GraphModelParams model_for(const ExperimentConfig& cfg, std::uint64_t seed) {
    return {cfg.n, cfg.alpha, cfg.q, seed};
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

} // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::prank: return "prank";
    case ExperimentKind::cyclicity: return "cyclicity";
    case ExperimentKind::m_corank: return "m-corank";
    case ExperimentKind::q_sweep: return "q-sweep";
    case ExperimentKind::balanced_scaling: return "balanced-scaling";
    }
    return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
    for (auto kind : {ExperimentKind::prank, ExperimentKind::cyclicity, ExperimentKind::m_corank,
                      ExperimentKind::q_sweep, ExperimentKind::balanced_scaling})
        if (to_string(kind) == name) return kind;
    throw InvalidConfig("unknown experiment kind '" + name + "'");
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw InvalidConfig("trials must be at least 1");
    if (!gfp::is_prime(p) || p >= gfp::kModulusLimit) throw InvalidConfig("p must be a prime below 2^31");
    try {
        graph::GraphModelParams{n, alpha, q, master_seed}.validate();
    } catch (const InvalidParams& e) {
        throw InvalidConfig(e.what());
    }
    if (kind == ExperimentKind::balanced_scaling && alpha != 1.0)
        throw InvalidConfig("balanced-scaling runs need alpha = 1");
}

void summarize(ExperimentResult& result) {
    const auto& xs = result.per_trial;
    if (xs.empty()) return;
    const double count = static_cast<double>(xs.size());
    double sum = 0.0;
    for (auto x : xs) sum += static_cast<double>(x);
    result.mean = sum / count;
    double ss = 0.0;
    for (auto x : xs) ss += (static_cast<double>(x) - result.mean) * (static_cast<double>(x) - result.mean);
    result.variance = xs.size() > 1 ? ss / (count - 1.0) : 0.0;

    std::vector<std::int64_t> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    constexpr std::array<double, 5> levels{0.01, 0.25, 0.5, 0.75, 0.99};
    for (std::size_t i = 0; i < levels.size(); ++i) {
        auto rank = static_cast<std::size_t>(std::ceil(levels[i] * count));
        rank = std::clamp<std::size_t>(rank, 1, sorted.size());
        result.quantiles[i] = static_cast<double>(sorted[rank - 1]);
    }
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw EmptyInput("Wilson interval of zero trials");
    const double nn = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    // The score interval reaches 0 exactly at no successes and 1 at all.
    const double lower = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double upper = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {lower, upper};
}

ExperimentResult run_prank_experiment(const ExperimentConfig& cfg) {
    require_kind(cfg, ExperimentKind::prank);
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult result = start_result(cfg);
    result.per_trial = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
        const auto g = graph::sample_bipartite(model_for(cfg, result.trial_seeds[t]));
        return static_cast<std::int64_t>(sandpile::p_rank(g, cfg.p));
    });
    summarize(result);
    result.comparison = compare_to_theory(result.per_trial, theory::rank_pmf_theoretical(cfg.n, cfg.alpha, cfg.p));
    result.wall_time_ms = elapsed_ms(start);
    return result;
}

ExperimentResult run_cyclicity_experiment(const ExperimentConfig& cfg) {
    require_kind(cfg, ExperimentKind::cyclicity);
    const std::size_t vertices = cfg.n + graph::side_size(cfg.n, cfg.alpha);
    if (vertices > kSnfVertexGuard)
        throw GuardExceeded("cyclicity runs use Smith normal form and are limited to " +
                            std::to_string(kSnfVertexGuard) + " vertices, got " + std::to_string(vertices));
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult result = start_result(cfg);
    result.per_trial = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
        const auto g = graph::sample_bipartite(model_for(cfg, result.trial_seeds[t]));
        return static_cast<std::int64_t>(sandpile::is_cyclic(g) ? 1 : 0);
    });
    summarize(result);
    const auto cyclic = static_cast<std::size_t>(std::count(result.per_trial.begin(), result.per_trial.end(), 1));
    result.wilson95 = wilson_interval(cyclic, cfg.trials);
    result.wall_time_ms = elapsed_ms(start);
    return result;
}

ExperimentResult run_mcorank_experiment(const ExperimentConfig& cfg) {
    require_kind(cfg, ExperimentKind::m_corank);
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult result = start_result(cfg);
    std::vector<std::int64_t> agree(cfg.trials, 1);
    const auto p = static_cast<gfp::Residue>(cfg.p);
    result.per_trial = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
        const auto m = reduction::build_M(cfg.n, cfg.alpha, cfg.q, p, result.trial_seeds[t]);
        const auto report = reduction::corank_pipeline(m);
        agree[t] = report.corank_schur && *report.corank_schur == report.corank_direct ? 1 : 0;
        return static_cast<std::int64_t>(report.corank_direct);
    });
    summarize(result);
    result.schur_mismatches = static_cast<std::size_t>(std::count(agree.begin(), agree.end(), 0));
    result.comparison = compare_to_theory(result.per_trial, theory::rank_pmf_theoretical(cfg.n, cfg.alpha, cfg.p));
    result.wall_time_ms = elapsed_ms(start);
    return result;
}

SweepResult run_qsweep(const ExperimentConfig& cfg, std::vector<double> qs) {
    require_kind(cfg, ExperimentKind::q_sweep);
    SweepResult sweep{cfg, {}};
    // Every q reuses the master seed, so the runs share their uniform draws.
    for (double q : qs) {
        ExperimentConfig sub = cfg;
        sub.kind = ExperimentKind::prank;
        sub.q = q;
        auto res = run_prank_experiment(sub);
        sweep.rows.push_back({q, res.mean, std::move(res)});
    }
    return sweep;
}

SweepResult run_balanced_scaling(const ExperimentConfig& cfg, std::vector<std::size_t> ns) {
    require_kind(cfg, ExperimentKind::balanced_scaling);
    SweepResult sweep{cfg, {}};
    for (std::size_t n : ns) {
        ExperimentConfig sub = cfg;
        sub.kind = ExperimentKind::prank;
        sub.n = n;
        auto res = run_prank_experiment(sub);
        const double normalized = res.mean / static_cast<double>(n);
        sweep.rows.push_back({static_cast<double>(n), normalized, std::move(res)});
    }
    return sweep;
}

} // namespace sandrank::harness
