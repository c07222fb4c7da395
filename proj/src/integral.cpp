#include "exstab/integral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "exstab/error.hpp"
#include "run_parallel.hpp"

namespace exstab {

void PairSystem::validate() const {
    if (vertices < 0) throw ContractError("negative vertex count");
    std::vector<char> seen(static_cast<std::size_t>(vertices) * vertices, 0);
    for (const Pair& p : pairs) {
        if (p.a < 0 || p.b < 0 || p.a >= vertices || p.b >= vertices)
            throw ContractError("pair vertex out of range");
        if (p.a == p.b) throw ContractError("pair joins a vertex to itself");
        if (p.exponent != 1 && p.exponent != 2) throw ContractError("pair exponent must be 1 or 2");
        const int a = std::min(p.a, p.b), b = std::max(p.a, p.b);
        char& slot = seen[static_cast<std::size_t>(a) * vertices + b];
        if (slot) throw ContractError("duplicate pair");
        slot = 1;
    }
}

PairSystem PairSystem::complete(int m, int exponent) {
    PairSystem ps;
    ps.vertices = m;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) ps.pairs.push_back({a, b, exponent});
    return ps;
}

PairSystem PairSystem::unmatched(const Matching& m, int exponent) {
    if (m.kind != MatchKind::one_sided) throw ContractError("unmatched() needs a one-sided matching");
    m.validate();
    PairSystem ps;
    ps.vertices = m.size();
    for (int a = 0; a < m.size(); ++a)
        for (int b = a + 1; b < m.size(); ++b)
            if (m.partner[a] != b) ps.pairs.push_back({a, b, exponent});
    return ps;
}

double PairSystem::expansion_cost() const {
    double cost = 1;
    for (const Pair& p : pairs) cost *= p.exponent + 1;
    return cost;
}

std::uint64_t default_term_cap() {
    if (const char* env = std::getenv("EXSTAB_TERM_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::uint64_t{1} << 24;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint8_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint8_t b : v) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using StateMap = std::unordered_map<std::vector<std::uint8_t>, Rational, VecHash>;

}  // namespace

Rational cube_integral(const PairSystem& ps, std::uint64_t term_cap) {
    ps.validate();
    const double cost = ps.expansion_cost();
    if (cost > static_cast<double>(term_cap)) {
        std::ostringstream os;
        os << "exact integration refused: estimated cost " << cost << " expansion terms exceeds cap "
           << term_cap << " (set EXSTAB_TERM_CAP to raise it)";
        throw CapExceeded(os.str());
    }

    const int m = ps.vertices;
    // Pairs attached to their lower endpoint; the fold closes vertices in
    // index order, so when u is closed every pair touching it has been chosen.
    std::vector<std::vector<std::pair<int, int>>> fwd(static_cast<std::size_t>(m));
    for (const PairSystem::Pair& p : ps.pairs)
        fwd[std::min(p.a, p.b)].push_back({std::max(p.a, p.b), p.exponent});

    // State: accumulated degrees of the still-open vertices u..m-1, mapped to
    // the exact sum of coefficient products over all choice prefixes that led
    // there. Aggregating identical residual degree vectors is what keeps dense
    // systems (K_7 and up) far below the raw 2^|P| walk.
    StateMap states;
    states.emplace(std::vector<std::uint8_t>(static_cast<std::size_t>(m), 0), Rational(1));

    std::vector<std::pair<int, int>> incs;  // (position in the residual key, delta)
    for (int u = 0; u < m; ++u) {
        StateMap next;
        const auto& edges = fwd[static_cast<std::size_t>(u)];
        for (auto& [key, val] : states) {
            // Branch over the per-pair choices of u's forward edges, then close
            // u: multiply by 1/(deg_u + 1) and drop it from the key.
            auto leaf = [&](int deg_u, long coef) {
                std::vector<std::uint8_t> rest(key.begin() + 1, key.end());
                for (auto [pos, d] : incs) rest[static_cast<std::size_t>(pos)] += d;
                Rational term = val * coef;
                term /= deg_u + 1;
                auto [it, inserted] = next.emplace(std::move(rest), term);
                if (!inserted) it->second += term;
            };
            auto branch = [&](auto&& self, std::size_t idx, int deg_u, long coef) -> void {
                if (idx == edges.size()) {
                    leaf(deg_u, coef);
                    return;
                }
                const auto [w, e] = edges[idx];
                const int pos = w - u - 1;
                self(self, idx + 1, deg_u, coef);
                incs.push_back({pos, 1});
                if (e == 1) {
                    self(self, idx + 1, deg_u + 1, -coef);
                } else {
                    self(self, idx + 1, deg_u + 1, -2 * coef);
                    incs.back().second = 2;
                    self(self, idx + 1, deg_u + 2, coef);
                }
                incs.pop_back();
            };
            branch(branch, 0, key[0], 1);
        }
        states = std::move(next);
    }

    Rational result(0);
    for (auto& [key, val] : states) result += val;  // single empty key
    return result;
}

std::pair<double, double> monte_carlo_integral(const PairSystem& ps, long samples, Seed seed,
                                               int threads) {
    ps.validate();
    if (samples < 1) throw ContractError("monte_carlo_integral needs samples >= 1");

    // Fixed block decomposition independent of the thread count; block b owns
    // samples [samples*b/B, samples*(b+1)/B) and its own derived stream.
    const long blocks = std::min<long>(samples, 1024);
    std::vector<double> block_sum(static_cast<std::size_t>(blocks), 0.0);
    std::vector<double> block_sumsq(static_cast<std::size_t>(blocks), 0.0);

    detail::run_indexed(blocks, threads, [&](long b) {
        SplitMix rng(mix_seed(seed.value, static_cast<std::uint64_t>(b)));
        const long lo = static_cast<long>((static_cast<long long>(samples) * b) / blocks);
        const long hi = static_cast<long>((static_cast<long long>(samples) * (b + 1)) / blocks);
        std::vector<double> x(static_cast<std::size_t>(ps.vertices));
        double s = 0, s2 = 0;
        for (long k = lo; k < hi; ++k) {
            for (double& xi : x) xi = rng.next_double();
            double prod = 1;
            for (const PairSystem::Pair& p : ps.pairs) {
                const double f = 1 - x[static_cast<std::size_t>(p.a)] * x[static_cast<std::size_t>(p.b)];
                prod *= p.exponent == 1 ? f : f * f;
            }
            s += prod;
            s2 += prod * prod;
        }
        block_sum[static_cast<std::size_t>(b)] = s;
        block_sumsq[static_cast<std::size_t>(b)] = s2;
    });

    double sum = 0, sumsq = 0;
    for (long b = 0; b < blocks; ++b) {
        sum += block_sum[static_cast<std::size_t>(b)];
        sumsq += block_sumsq[static_cast<std::size_t>(b)];
    }
    const double mean = sum / static_cast<double>(samples);
    double stderr_mean = 0;
    if (samples > 1) {
        const double var = std::max(0.0, (sumsq - static_cast<double>(samples) * mean * mean) /
                                             static_cast<double>(samples - 1));
        stderr_mean = std::sqrt(var / static_cast<double>(samples));
    }
    return {mean, stderr_mean};
}

}  // namespace exstab
