// Benchmark comparing the serial reference path (threads = 1) against the
// OpenMP kernels on the trial-parallel experiments and the block-parallel
// integral estimator, and verifying that both paths agree bit for bit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "exstab/analytic.hpp"
#include "exstab/integral.hpp"
#include "exstab/montecarlo.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_of(const std::function<void()>& fn) {
    const auto t0 = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* name, double serial_s, double parallel_s, bool equal) {
    std::printf("%-34s %10.3fs %10.3fs %8.2fx   %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, equal ? "identical" : "MISMATCH");
}

bool summaries_equal(const exstab::EstimateSummary& a, const exstab::EstimateSummary& b) {
    return a.mean == b.mean && a.second_moment == b.second_moment && a.variance == b.variance &&
           a.stderr_mean == b.stderr_mean && a.ci_lo == b.ci_lo && a.ci_hi == b.ci_hi;
}

}  // namespace

int main(int argc, char** argv) {
    const int threads = argc > 1 ? std::atoi(argv[1]) : 0;  // 0 = runtime default
    std::printf("%-34s %11s %11s %9s   %s\n", "workload", "serial", "parallel", "speedup",
                "results");

    {
        exstab::ExperimentConfig cfg;
        cfg.side = exstab::MatchKind::two_sided;
        cfg.n = 9;
        cfg.trials = 4000;
        cfg.seed = exstab::Seed{42};
        cfg.kind = exstab::StabilityKind::exchange;
        exstab::EstimateSummary serial, parallel;
        cfg.threads = 1;
        const double ts = time_of([&] { serial = exstab::estimate_counts(cfg); });
        cfg.threads = threads;
        const double tp = time_of([&] { parallel = exstab::estimate_counts(cfg); });
        row("estimate_counts two n=9 4k", ts, tp, summaries_equal(serial, parallel));
    }
    {
        exstab::ExperimentConfig cfg;
        cfg.side = exstab::MatchKind::one_sided;
        cfg.n = 12;
        cfg.trials = 20000;
        cfg.seed = exstab::Seed{42};
        cfg.kind = exstab::StabilityKind::exchange;
        exstab::EstimateSummary serial, parallel;
        cfg.threads = 1;
        const double ts = time_of([&] { serial = exstab::estimate_counts(cfg); });
        cfg.threads = threads;
        const double tp = time_of([&] { parallel = exstab::estimate_counts(cfg); });
        row("estimate_counts one n=12 20k", ts, tp, summaries_equal(serial, parallel));
    }
    {
        const exstab::PairSystem k6 = exstab::PairSystem::complete(6);
        std::pair<double, double> serial, parallel;
        const double ts =
            time_of([&] { serial = exstab::monte_carlo_integral(k6, 4'000'000, exstab::Seed{7}, 1); });
        const double tp = time_of(
            [&] { parallel = exstab::monte_carlo_integral(k6, 4'000'000, exstab::Seed{7}, threads); });
        row("monte_carlo_integral K6 4M", ts, tp, serial == parallel);
    }
    return 0;
}
