#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exstab/enumerate.hpp"
#include "exstab/matching.hpp"
#include "exstab/seed.hpp"

namespace exstab {

// Seeded, reproducible experiments over random instances. Trial t generates
// its instance from mix_seed(seed, t), so trials are order-independent;
// counts and squared counts are accumulated as exact integers before any
// division, which makes every summary bit-identical across thread counts.
struct ExperimentConfig {
    MatchKind side = MatchKind::two_sided;
    int n = 0;
    long trials = 1;
    Seed seed;
    StabilityKind kind = StabilityKind::exchange;
    int threads = 0;            // 0 = library default; 1 = serial reference path
    bool retain_ranks = false;
    double rank_epsilon = 0.1;  // band half-width for the rank-law summary
};

struct EstimateSummary {
    double mean = 0;
    double second_moment = 0;
    double variance = 0;
    double stderr_mean = 0;
    double ci_lo = 0;
    double ci_hi = 0;
    long trials = 0;
    int n = 0;
    MatchKind side = MatchKind::two_sided;
    StabilityKind kind = StabilityKind::exchange;
    std::uint64_t seed = 0;
    double elapsed_s = 0;
};

// Mean and second moment of the number of matchings of the requested kind.
// Guidance caps: two-sided n <= 12, one-sided n <= 16 (refusal beyond).
EstimateSummary estimate_counts(const ExperimentConfig& cfg);

// Per-trial indicator of the existence of a doubly stable matching;
// the confidence interval is a Wilson binomial interval.
EstimateSummary estimate_doubly_stable_prob(const ExperimentConfig& cfg);

// One record per e-stable matching found across all trials.
struct RankSample {
    long trial = 0;
    int matching_index = 0;
    long long r = 0;       // total partner rank (husbands' total, two-sided)
    long long q = 0;       // wives' total rank; unused one-sided
    double r_norm = 0;     // r / n^{3/2}
};

struct RankLawResult {
    std::vector<RankSample> samples;
    double mean_r_norm = 0;
    double min_r_norm = 0;
    double max_r_norm = 0;
    double stderr_r_norm = 0;
    double mean_q_norm = 0;    // two-sided only
    double stderr_q_norm = 0;
    double fraction_outside = 0;  // of [1 - eps, 1 + eps]
    EstimateSummary counts;       // per-trial e-stable counts, as estimate_counts
};

RankLawResult collect_rank_law(const ExperimentConfig& cfg);

struct SecondMomentResult {
    EstimateSummary summary;
    std::uint64_t max_count = 0;
    long argmax_trial = 0;
    std::string argmax_instance_text;  // instance text format, for reproduction
};

SecondMomentResult estimate_second_moment(const ExperimentConfig& cfg);

}  // namespace exstab
