#include "exstab/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "exstab/error.hpp"
#include "exstab/rational.hpp"
#include "exstab/stability.hpp"
#include "run_parallel.hpp"

namespace exstab {
namespace {

constexpr int kGuidanceCapTwoSided = 12;
constexpr int kGuidanceCapOneSided = 16;

void check_config(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ContractError("experiment needs trials >= 1");
    if (cfg.side == MatchKind::two_sided) {
        if (cfg.n < 1) throw ContractError("two-sided market needs n >= 1");
        if (cfg.n > kGuidanceCapTwoSided)
            throw CapExceeded("two-sided enumeration beyond n = " +
                              std::to_string(kGuidanceCapTwoSided) +
                              " is infeasible at default trial counts");
    } else {
        if (cfg.n < 2 || cfg.n % 2 != 0) throw ContractError("one-sided market needs even n >= 2");
        if (cfg.n > kGuidanceCapOneSided)
            throw CapExceeded("one-sided enumeration beyond n = " +
                              std::to_string(kGuidanceCapOneSided) +
                              " is infeasible at default trial counts");
    }
}

double wall_seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Exact integer aggregation of per-trial counts; all divisions happen in
// rational arithmetic at the very end, so the summary is bit-identical no
// matter how the trials were scheduled.
EstimateSummary summarize_counts(const ExperimentConfig& cfg,
                                 const std::vector<std::uint64_t>& counts, double elapsed) {
    BigInt sum = 0, sumsq = 0;
    for (std::uint64_t c : counts) {
        const BigInt v(static_cast<unsigned long>(c));
        sum += v;
        sumsq += v * v;
    }
    const long t = static_cast<long>(counts.size());
    EstimateSummary s;
    s.trials = t;
    s.n = cfg.n;
    s.side = cfg.side;
    s.kind = cfg.kind;
    s.seed = cfg.seed.value;
    s.elapsed_s = elapsed;
    Rational mean(sum, BigInt(t));
    mean.canonicalize();
    Rational second(sumsq, BigInt(t));
    second.canonicalize();
    s.mean = to_double(mean);
    s.second_moment = to_double(second);
    if (t > 1) {
        Rational var = (Rational(sumsq) - Rational(BigInt(sum * sum), BigInt(t))) / (t - 1);
        var.canonicalize();
        s.variance = to_double(var);
        s.stderr_mean = std::sqrt(s.variance / static_cast<double>(t));
    }
    s.ci_lo = s.mean - 1.96 * s.stderr_mean;
    s.ci_hi = s.mean + 1.96 * s.stderr_mean;
    return s;
}

std::uint64_t count_one_trial(const ExperimentConfig& cfg, long t) {
    const Seed ts{mix_seed(cfg.seed.value, static_cast<std::uint64_t>(t))};
    if (cfg.side == MatchKind::two_sided) {
        const PreferenceInstance inst = generate_two_sided(cfg.n, ts);
        return enumerate_pruned(inst, cfg.kind).count;
    }
    const OneSidedInstance inst = generate_one_sided(cfg.n, ts);
    return enumerate_pruned(inst, cfg.kind).count;
}

}  // namespace

EstimateSummary estimate_counts(const ExperimentConfig& cfg) {
    check_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(cfg.trials), 0);
    detail::run_indexed(cfg.trials, cfg.threads, [&](long t) {
        counts[static_cast<std::size_t>(t)] = count_one_trial(cfg, t);
    });
    return summarize_counts(cfg, counts, wall_seconds_since(t0));
}

EstimateSummary estimate_doubly_stable_prob(const ExperimentConfig& cfg) {
    check_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(cfg.trials), 0);
    detail::run_indexed(cfg.trials, cfg.threads, [&](long t) {
        const Seed ts{mix_seed(cfg.seed.value, static_cast<std::uint64_t>(t))};
        bool found;
        if (cfg.side == MatchKind::two_sided)
            found = exists_matching(generate_two_sided(cfg.n, ts), StabilityKind::doubly);
        else
            found = exists_matching(generate_one_sided(cfg.n, ts), StabilityKind::doubly);
        hits[static_cast<std::size_t>(t)] = found ? 1 : 0;
    });
    ExperimentConfig tagged = cfg;
    tagged.kind = StabilityKind::doubly;
    EstimateSummary s = summarize_counts(tagged, hits, wall_seconds_since(t0));
    // Wilson interval for the existence probability.
    const double z = 1.96, t = static_cast<double>(cfg.trials), p = s.mean;
    const double denom = 1 + z * z / t;
    const double center = (p + z * z / (2 * t)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / t + z * z / (4 * t * t)) / denom;
    s.ci_lo = center - half;
    s.ci_hi = center + half;
    s.stderr_mean = std::sqrt(p * (1 - p) / t);
    return s;
}

RankLawResult collect_rank_law(const ExperimentConfig& cfg) {
    check_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const long trials = cfg.trials;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(trials), 0);
    std::vector<std::vector<std::pair<long long, long long>>> per_trial(
        static_cast<std::size_t>(trials));

    detail::run_indexed(trials, cfg.threads, [&](long t) {
        const Seed ts{mix_seed(cfg.seed.value, static_cast<std::uint64_t>(t))};
        auto& records = per_trial[static_cast<std::size_t>(t)];
        if (cfg.side == MatchKind::two_sided) {
            const PreferenceInstance inst = generate_two_sided(cfg.n, ts);
            const EnumerationResult found =
                enumerate_pruned(inst, StabilityKind::exchange, /*retain=*/true);
            counts[static_cast<std::size_t>(t)] = found.count;
            for (const Matching& m : found.matchings) {
                const RankTotals rt = rank_totals(inst, m);
                records.emplace_back(rt.r, rt.q);
            }
        } else {
            const OneSidedInstance inst = generate_one_sided(cfg.n, ts);
            const EnumerationResult found =
                enumerate_pruned(inst, StabilityKind::exchange, /*retain=*/true);
            counts[static_cast<std::size_t>(t)] = found.count;
            for (const Matching& m : found.matchings) {
                const RankTotals rt = rank_totals(inst, m);
                records.emplace_back(rt.r, 0);
            }
        }
    });

    RankLawResult out;
    ExperimentConfig tagged = cfg;
    tagged.kind = StabilityKind::exchange;
    out.counts = summarize_counts(tagged, counts, wall_seconds_since(t0));

    const double scale = std::pow(static_cast<double>(cfg.n), 1.5);
    BigInt sum_r = 0, sumsq_r = 0, sum_q = 0, sumsq_q = 0;
    long long outside = 0;
    out.min_r_norm = std::numeric_limits<double>::infinity();
    out.max_r_norm = -std::numeric_limits<double>::infinity();
    for (long t = 0; t < trials; ++t) {
        int idx = 0;
        for (const auto& [r, q] : per_trial[static_cast<std::size_t>(t)]) {
            RankSample rec;
            rec.trial = t;
            rec.matching_index = idx++;
            rec.r = r;
            rec.q = q;
            rec.r_norm = static_cast<double>(r) / scale;
            out.min_r_norm = std::min(out.min_r_norm, rec.r_norm);
            out.max_r_norm = std::max(out.max_r_norm, rec.r_norm);
            if (rec.r_norm < 1 - cfg.rank_epsilon || rec.r_norm > 1 + cfg.rank_epsilon) ++outside;
            sum_r += BigInt(static_cast<long>(r));
            sumsq_r += BigInt(static_cast<long>(r)) * BigInt(static_cast<long>(r));
            sum_q += BigInt(static_cast<long>(q));
            sumsq_q += BigInt(static_cast<long>(q)) * BigInt(static_cast<long>(q));
            out.samples.push_back(rec);
        }
    }
    const long s = static_cast<long>(out.samples.size());
    if (s > 0) {
        Rational mr(sum_r, BigInt(s));
        mr.canonicalize();
        out.mean_r_norm = to_double(mr) / scale;
        Rational mq(sum_q, BigInt(s));
        mq.canonicalize();
        out.mean_q_norm = to_double(mq) / scale;
        out.fraction_outside = static_cast<double>(outside) / static_cast<double>(s);
        if (s > 1) {
            Rational vr =
                (Rational(sumsq_r) - Rational(BigInt(sum_r * sum_r), BigInt(s))) / BigInt(s - 1);
            vr.canonicalize();
            out.stderr_r_norm = std::sqrt(to_double(vr) / static_cast<double>(s)) / scale;
            Rational vq =
                (Rational(sumsq_q) - Rational(BigInt(sum_q * sum_q), BigInt(s))) / BigInt(s - 1);
            vq.canonicalize();
            out.stderr_q_norm = std::sqrt(to_double(vq) / static_cast<double>(s)) / scale;
        }
    } else {
        out.min_r_norm = out.max_r_norm = 0;
    }
    return out;
}

SecondMomentResult estimate_second_moment(const ExperimentConfig& cfg) {
    check_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(cfg.trials), 0);
    detail::run_indexed(cfg.trials, cfg.threads, [&](long t) {
        counts[static_cast<std::size_t>(t)] = count_one_trial(cfg, t);
    });

    SecondMomentResult out;
    out.summary = summarize_counts(cfg, counts, wall_seconds_since(t0));
    out.max_count = 0;
    out.argmax_trial = 0;
    for (long t = 0; t < cfg.trials; ++t)
        if (counts[static_cast<std::size_t>(t)] > out.max_count) {
            out.max_count = counts[static_cast<std::size_t>(t)];
            out.argmax_trial = t;
        }
    const Seed ts{mix_seed(cfg.seed.value, static_cast<std::uint64_t>(out.argmax_trial))};
    out.argmax_instance_text = cfg.side == MatchKind::two_sided
                                   ? write_instance(generate_two_sided(cfg.n, ts))
                                   : write_instance(generate_one_sided(cfg.n, ts));
    return out;
}

}  // namespace exstab
