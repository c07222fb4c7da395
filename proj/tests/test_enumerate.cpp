#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "exstab/enumerate.hpp"
#include "exstab/error.hpp"
#include "exstab/instance.hpp"
#include "exstab/rational.hpp"
#include "oracles.hpp"

using namespace exstab;

namespace {

std::vector<std::vector<int>> partner_sets(const EnumerationResult& res) {
    std::vector<std::vector<int>> out;
    for (const Matching& m : res.matchings) out.push_back(m.partner);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("n=1 counts") {
    const PreferenceInstance inst = generate_two_sided(1, Seed{0});
    for (StabilityKind k : {StabilityKind::exchange, StabilityKind::classic, StabilityKind::doubly})
        CHECK(enumerate_pruned(inst, k).count == 1);
    CHECK(count_doubly_stable(inst).count == 1);
}

TEST_CASE("mean e-stable count over all 16 two-sided n=2 instances is 9/8") {
    BigInt total = 0;
    std::uint64_t instances = 0;
    for_each_two_sided(2, [&](const PreferenceInstance& inst) {
        total += static_cast<unsigned long>(enumerate_pruned(inst, StabilityKind::exchange).count);
        ++instances;
    });
    CHECK(instances == 16);
    Rational mean(total, BigInt(16));
    mean.canonicalize();
    CHECK(mean == make_rational(9, 8));
}

TEST_CASE("mean e-stable count over all 1296 one-sided n=4 instances is 233/216") {
    BigInt total = 0;
    for_each_one_sided(4, [&](const OneSidedInstance& inst) {
        total += static_cast<unsigned long>(enumerate_pruned(inst, StabilityKind::exchange).count);
    });
    Rational mean(total, BigInt(1296));
    mean.canonicalize();
    CHECK(mean == make_rational(233, 216));
}

TEST_CASE("pruned and naive agree on matching sets, counts and node ordering") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const PreferenceInstance inst = generate_two_sided(5, Seed{s});
        for (StabilityKind k :
             {StabilityKind::exchange, StabilityKind::classic, StabilityKind::doubly}) {
            const EnumerationResult pruned = enumerate_pruned(inst, k, true);
            const EnumerationResult naive = enumerate_naive(inst, k, true);
            CHECK(pruned.count == naive.count);
            CHECK(partner_sets(pruned) == partner_sets(naive));
            CHECK(pruned.nodes_visited <= naive.nodes_visited);
        }
        const OneSidedInstance one = generate_one_sided(6, Seed{s});
        for (StabilityKind k :
             {StabilityKind::exchange, StabilityKind::classic, StabilityKind::doubly}) {
            const EnumerationResult pruned = enumerate_pruned(one, k, true);
            const EnumerationResult naive = enumerate_naive(one, k, true);
            CHECK(pruned.count == naive.count);
            CHECK(partner_sets(pruned) == partner_sets(naive));
            CHECK(pruned.nodes_visited <= naive.nodes_visited);
        }
    }
}

TEST_CASE("pruned equals naive at n=7 across 100 seeds (counts)") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const PreferenceInstance inst = generate_two_sided(7, Seed{s});
        for (StabilityKind k :
             {StabilityKind::exchange, StabilityKind::classic, StabilityKind::doubly})
            CHECK(enumerate_pruned(inst, k).count == enumerate_naive(inst, k).count);
    }
}

TEST_CASE("doubly stable set is the intersection of the stable and e-stable sets") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const PreferenceInstance inst = generate_two_sided(6, Seed{s});
        auto stable = partner_sets(enumerate_pruned(inst, StabilityKind::classic, true));
        auto estable = partner_sets(enumerate_pruned(inst, StabilityKind::exchange, true));
        std::vector<std::vector<int>> both;
        std::set_intersection(stable.begin(), stable.end(), estable.begin(), estable.end(),
                              std::back_inserter(both));
        CHECK(partner_sets(enumerate_pruned(inst, StabilityKind::doubly, true)) == both);
        CHECK(partner_sets(count_doubly_stable(inst, true)) == both);

        const OneSidedInstance one = generate_one_sided(8, Seed{s});
        auto stable1 = partner_sets(enumerate_pruned(one, StabilityKind::classic, true));
        auto estable1 = partner_sets(enumerate_pruned(one, StabilityKind::exchange, true));
        std::vector<std::vector<int>> both1;
        std::set_intersection(stable1.begin(), stable1.end(), estable1.begin(), estable1.end(),
                              std::back_inserter(both1));
        CHECK(partner_sets(count_doubly_stable(one, true)) == both1);
    }
}

TEST_CASE("enumerated sets are equivariant under relabeling") {
    SplitMix rng(31337);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 5;
        const PreferenceInstance inst = generate_two_sided(n, Seed{rng.next()});
        std::vector<int> pi(n);
        for (int i = 0; i < n; ++i) pi[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(pi[i], pi[rng.below(i + 1)]);
        PreferenceInstance relabeled;
        relabeled.n = n;
        relabeled.men.resize(inst.men.size());
        relabeled.women.resize(inst.women.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                relabeled.men[static_cast<std::size_t>(pi[i]) * n + j] = inst.man_rank(i, j);
                relabeled.women[static_cast<std::size_t>(j) * n + pi[i]] = inst.woman_rank(j, i);
            }
        const auto orig = partner_sets(enumerate_pruned(inst, StabilityKind::exchange, true));
        std::vector<std::vector<int>> mapped;
        for (const auto& wife : orig) {
            std::vector<int> w(n);
            for (int i = 0; i < n; ++i) w[pi[i]] = wife[i];
            mapped.push_back(w);
        }
        std::sort(mapped.begin(), mapped.end());
        CHECK(partner_sets(enumerate_pruned(relabeled, StabilityKind::exchange, true)) == mapped);
    }
}

TEST_CASE("existence short-circuits to the same answer") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const OneSidedInstance inst = generate_one_sided(8, Seed{s});
        CHECK(exists_matching(inst, StabilityKind::doubly) ==
              (enumerate_pruned(inst, StabilityKind::doubly).count > 0));
    }
}

TEST_CASE("counting mode retains nothing") {
    const PreferenceInstance inst = generate_two_sided(6, Seed{9});
    CHECK(enumerate_pruned(inst, StabilityKind::exchange).matchings.empty());
    CHECK(enumerate_pruned(inst, StabilityKind::exchange, true).matchings.size() ==
          enumerate_pruned(inst, StabilityKind::exchange).count);
}

TEST_CASE("naive enumeration refuses beyond its cap") {
    CHECK_THROWS_AS(enumerate_naive(generate_two_sided(9, Seed{1}), StabilityKind::exchange),
                    CapExceeded);
    CHECK_THROWS_AS(enumerate_naive(generate_one_sided(12, Seed{1}), StabilityKind::exchange),
                    CapExceeded);
}

TEST_CASE("all-mutual-first-choice n=2 instance has exactly one doubly stable matching") {
    PreferenceInstance inst;
    inst.n = 2;
    inst.men = {1, 2, 2, 1};    // man 0 prefers woman 0; man 1 prefers woman 1
    inst.women = {1, 2, 2, 1};  // woman 0 prefers man 0; woman 1 prefers man 1
    const EnumerationResult res = count_doubly_stable(inst, true);
    CHECK(res.count == 1);
    CHECK(res.matchings[0].partner == std::vector<int>{0, 1});
}
