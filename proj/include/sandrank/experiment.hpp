#pragma once

// Seeded Monte Carlo experiments over G(n, alpha, q).
//
// Trial t always draws from derive_seed(master_seed, t), and observations are
// stored by trial index, so a result is identical for any thread count.

#include "sandrank/theory.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sandrank::harness {

enum class ExperimentKind { prank, cyclicity, m_corank, q_sweep, balanced_scaling };

std::string to_string(ExperimentKind kind);
/// Accepts the CLI spellings (prank, cyclicity, m-corank, q-sweep, balanced-scaling).
ExperimentKind parse_kind(const std::string& name);

/// Largest graph (vertices) the Smith-normal-form experiments accept.
inline constexpr std::size_t kSnfVertexGuard = 500;

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::prank;
    std::size_t n = 100;
    double alpha = 0.25;
    double q = 0.5;
    std::uint64_t p = 2;
    std::size_t trials = 100;
    std::uint64_t master_seed = 1;
    std::optional<std::string> output_path;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    /// Throws InvalidConfig on bad parameters.
    void validate() const;
};

/// Distance between observed p-ranks and a predicted law.
struct ComparisonStats {
    double mean_gap = 0.0;
    /// L1 distance between the empirical and predicted CDFs.
    double wasserstein1 = 0.0;
    /// Entry m-1 estimates P(|X - Y| >= m), m = 1..10, under the comonotone
    /// coupling: sorted observations paired with predicted quantiles at
    /// (t + 0.5) / trials.
    std::vector<double> quantile_coupling_tail;
    /// Minus the least-squares slope of log(tail) against m over the nonzero
    /// tail entries; empty when fewer than two are nonzero.
    std::optional<double> fitted_decay_rate;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<std::int64_t> per_trial;
    std::vector<std::uint64_t> trial_seeds;
    double mean = 0.0;
    double variance = 0.0; // unbiased; 0 for a single trial
    /// Nearest-rank quantiles at 1%, 25%, 50%, 75%, 99%.
    std::array<double, 5> quantiles{};
    std::optional<ComparisonStats> comparison;
    /// 95% Wilson score interval (cyclicity runs).
    std::optional<Interval> wilson95;
    /// Trials where the direct and Schur coranks disagreed (m-corank runs).
    std::optional<std::size_t> schur_mismatches;
    double wall_time_ms = 0.0;
    std::string version;
};

struct SweepRow {
    double parameter = 0.0; // q for q-sweeps, n for balanced scaling
    double value = 0.0;     // mean p-rank, or mean p-rank / n
    ExperimentResult result;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepRow> rows;
};

inline constexpr std::array<double, 5> kDefaultSweepQ{0.2, 0.35, 0.5, 0.65, 0.8};
inline constexpr std::array<std::size_t, 3> kDefaultScalingN{50, 100, 200};

ExperimentResult run_prank_experiment(const ExperimentConfig& cfg);
ExperimentResult run_cyclicity_experiment(const ExperimentConfig& cfg);
ExperimentResult run_mcorank_experiment(const ExperimentConfig& cfg);
SweepResult run_qsweep(const ExperimentConfig& cfg, std::vector<double> qs = {kDefaultSweepQ.begin(), kDefaultSweepQ.end()});
SweepResult run_balanced_scaling(const ExperimentConfig& cfg,
                                 std::vector<std::size_t> ns = {kDefaultScalingN.begin(), kDefaultScalingN.end()});

/// Throws EmptyInput on an empty observation list.
ComparisonStats compare_to_theory(const std::vector<std::int64_t>& observations,
                                  const theory::RankDistribution& dist);

Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Fills mean, variance and quantiles from per_trial.
void summarize(ExperimentResult& result);

} // namespace sandrank::harness
