#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exstab/enumerate.hpp"
#include "exstab/error.hpp"
#include "exstab/instance.hpp"
#include "exstab/rational.hpp"
#include "exstab/stability.hpp"
#include "oracles.hpp"

using namespace exstab;

namespace {

PreferenceInstance two_from_orders(int n, const std::vector<std::vector<int>>& men_orders,
                                   const std::vector<std::vector<int>>& women_orders) {
    // 0-based orders, most preferred first
    PreferenceInstance inst;
    inst.n = n;
    inst.men.assign(static_cast<std::size_t>(n) * n, 0);
    inst.women.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) inst.men[static_cast<std::size_t>(i) * n + men_orders[i][k]] = k + 1;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            inst.women[static_cast<std::size_t>(j) * n + women_orders[j][k]] = k + 1;
    return inst;
}

Matching two_matching(std::vector<int> wife) {
    return oracle::make_matching(MatchKind::two_sided, std::move(wife));
}

Matching one_matching(std::vector<int> mate) {
    return oracle::make_matching(MatchKind::one_sided, std::move(mate));
}

}  // namespace

TEST_CASE("n=1 matchings are stable in every sense") {
    const PreferenceInstance inst = generate_two_sided(1, Seed{5});
    const Matching m = two_matching({0});
    CHECK(is_exchange_stable(inst, m).verdict);
    CHECK(is_stable(inst, m).verdict);
    CHECK(is_doubly_stable(inst, m));
    const RankTotals t = rank_totals(inst, m);
    CHECK(t.q == 1);
    CHECK(t.r == 1);
}

TEST_CASE("forced man-exchange block at n=2") {
    // Both men rank the other man's wife first while matched to their second
    // choice; the pair (1, 2) must block.
    const PreferenceInstance inst = two_from_orders(2, {{1, 0}, {0, 1}}, {{0, 1}, {0, 1}});
    const Matching m = two_matching({0, 1});
    const BlockingReport rep = is_exchange_stable(inst, m);
    REQUIRE_FALSE(rep.verdict);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->type == WitnessType::man_exchange);
    CHECK(rep.witness->a == 0);
    CHECK(rep.witness->b == 1);
}

TEST_CASE("fixed n=3 instance agrees with the four-inequality checker") {
    const PreferenceInstance inst = two_from_orders(
        3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {{1, 0, 2}, {2, 1, 0}, {0, 2, 1}});
    for (const auto& wife : oracle::all_two_sided_matchings(3)) {
        const Matching m = two_matching(wife);
        CHECK(is_exchange_stable(inst, m).verdict == oracle::naive_exchange_stable(inst, wife));
        CHECK(is_stable(inst, m).verdict == oracle::naive_stable(inst, wife));
    }
}

TEST_CASE("one-sided matched pairs are exempt from exchange blocking") {
    const OneSidedInstance inst = generate_one_sided(2, Seed{3});
    CHECK(is_exchange_stable(inst, one_matching({1, 0})).verdict);
}

TEST_CASE("forced one-sided exchange block at n=4") {
    // 1 matched to 3, 2 matched to 4 (0-based: 0-2, 1-3); 0 prefers partner(1)=3
    // over 2, and 1 prefers partner(0)=2 over 3.
    OneSidedInstance inst;
    inst.n = 4;
    inst.ranks = {
        0, 3, 2, 1,   // member 0: ranks(1,2,3) = 3,2,1 -> prefers 3 over 2
        3, 0, 1, 2,   // member 1: prefers 2 over 3
        1, 2, 0, 3,   //
        1, 2, 3, 0,
    };
    const BlockingReport rep = is_exchange_stable(inst, one_matching({2, 3, 0, 1}));
    REQUIRE_FALSE(rep.verdict);
    CHECK(rep.witness->type == WitnessType::member_exchange);
    CHECK(rep.witness->a == 0);
    CHECK(rep.witness->b == 1);
}

TEST_CASE("one-sided n=4 sweep agrees with the naive all-pairs checker") {
    const auto matchings = oracle::all_one_sided_matchings(4);
    for_each_one_sided(4, [&](const OneSidedInstance& inst) {
        for (const auto& mate : matchings) {
            const Matching m = one_matching(mate);
            CHECK(is_exchange_stable(inst, m).verdict == oracle::naive_exchange_stable(inst, mate));
            CHECK(is_stable(inst, m).verdict == oracle::naive_stable(inst, mate));
        }
    });
}

TEST_CASE("witnesses replay against their defining inequalities") {
    const auto matchings6 = oracle::all_two_sided_matchings(6);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const PreferenceInstance inst = generate_two_sided(6, Seed{s});
        const Matching m = two_matching(matchings6[s % 720]);
        const BlockingReport ex = is_exchange_stable(inst, m);
        if (!ex.verdict) {
            const auto& w = *ex.witness;
            if (w.type == WitnessType::man_exchange) {
                CHECK(inst.man_rank(w.a, m.partner[w.b]) < inst.man_rank(w.a, m.partner[w.a]));
                CHECK(inst.man_rank(w.b, m.partner[w.a]) < inst.man_rank(w.b, m.partner[w.b]));
            } else {
                const auto husband = m.inverse();
                CHECK(inst.woman_rank(w.a, husband[w.b]) < inst.woman_rank(w.a, husband[w.a]));
                CHECK(inst.woman_rank(w.b, husband[w.a]) < inst.woman_rank(w.b, husband[w.b]));
            }
        }
        const BlockingReport cl = is_stable(inst, m);
        if (!cl.verdict) {
            const auto& w = *cl.witness;
            const auto husband = m.inverse();
            CHECK(inst.man_rank(w.a, w.b) < inst.man_rank(w.a, m.partner[w.a]));
            CHECK(inst.woman_rank(w.b, w.a) < inst.woman_rank(w.b, husband[w.b]));
        }
    }
}

TEST_CASE("one-sided exchange witness is never a matched pair") {
    const auto matchings8 = oracle::all_one_sided_matchings(8);
    for (std::uint64_t s = 0; s < 200; ++s) {
        const OneSidedInstance inst = generate_one_sided(8, Seed{s});
        const auto& mate = matchings8[s % 105];
        const BlockingReport rep = is_exchange_stable(inst, one_matching(mate));
        if (!rep.verdict) CHECK(mate[rep.witness->a] != rep.witness->b);
    }
}

TEST_CASE("verdicts are invariant under relabeling the men") {
    SplitMix rng(777);
    const auto matchings5 = oracle::all_two_sided_matchings(5);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 5;
        const PreferenceInstance inst = generate_two_sided(n, Seed{rng.next()});
        const auto& wife = matchings5[rng.below(120)];
        // random permutation pi of the men
        std::vector<int> pi(n);
        for (int i = 0; i < n; ++i) pi[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(pi[i], pi[rng.below(i + 1)]);

        PreferenceInstance relabeled;
        relabeled.n = n;
        relabeled.men.resize(inst.men.size());
        relabeled.women.resize(inst.women.size());
        std::vector<int> new_wife(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                relabeled.men[static_cast<std::size_t>(pi[i]) * n + j] = inst.man_rank(i, j);
                relabeled.women[static_cast<std::size_t>(j) * n + pi[i]] = inst.woman_rank(j, i);
            }
            new_wife[pi[i]] = wife[i];
        }
        const Matching m0 = two_matching(wife), m1 = two_matching(new_wife);
        CHECK(is_exchange_stable(inst, m0).verdict == is_exchange_stable(relabeled, m1).verdict);
        CHECK(is_stable(inst, m0).verdict == is_stable(relabeled, m1).verdict);
        CHECK(rank_totals(inst, m0).q == rank_totals(relabeled, m1).q);
        CHECK(rank_totals(inst, m0).r == rank_totals(relabeled, m1).r);
    }
}

TEST_CASE("rank totals: extremes and a naive recount") {
    // everyone matched to their first choice
    const PreferenceInstance ident = two_from_orders(
        3, {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}}, {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}});
    const RankTotals best = rank_totals(ident, two_matching({0, 1, 2}));
    CHECK(best.q == 3);
    CHECK(best.r == 3);

    SplitMix rng(2);
    const auto matchings6 = oracle::all_two_sided_matchings(6);
    const auto one_matchings6 = oracle::all_one_sided_matchings(6);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 6;
        const PreferenceInstance inst = generate_two_sided(n, Seed{rng.next()});
        const auto& wife = matchings6[rng.below(720)];
        // recount by scanning each preference list for the partner's position
        long long q = 0, r = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (inst.man_rank(i, j) <= inst.man_rank(i, wife[i])) ++q;
        std::vector<int> husband(n);
        for (int i = 0; i < n; ++i) husband[wife[i]] = i;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (inst.woman_rank(j, i) <= inst.woman_rank(j, husband[j])) ++r;
        const RankTotals t = rank_totals(inst, two_matching(wife));
        CHECK(t.q == q);
        CHECK(t.r == r);
        CHECK(t.q >= n);
        CHECK(t.q <= n * n);
        CHECK(t.r >= n);
        CHECK(t.r <= n * n);

        const OneSidedInstance one = generate_one_sided(6, Seed{rng.next()});
        const auto& mate = one_matchings6[rng.below(15)];
        long long r1 = 0;
        for (int i = 0; i < 6; ++i) r1 += one.rank(i, mate[i]);
        const RankTotals t1 = rank_totals(one, one_matching(mate));
        CHECK(t1.r == r1);
        CHECK(t1.r >= 6);
        CHECK(t1.r <= 6 * 5);
    }
}

TEST_CASE("contract errors on malformed matchings") {
    const PreferenceInstance inst = generate_two_sided(3, Seed{1});
    CHECK_THROWS_AS(is_stable(inst, two_matching({0, 0, 1})), ContractError);
    CHECK_THROWS_AS(is_stable(inst, two_matching({0, 1})), ContractError);
    const OneSidedInstance one = generate_one_sided(4, Seed{1});
    CHECK_THROWS_AS(is_stable(one, one_matching({1, 0, 3, 3})), ContractError);
    CHECK_THROWS_AS(is_exchange_stable(one, two_matching({1, 0, 3, 2})), ContractError);
}

TEST_CASE("gale-shapley: mutual first choices give the identity matching") {
    const PreferenceInstance ident = two_from_orders(
        3, {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}}, {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}});
    const Matching m = gale_shapley(ident);
    CHECK(m.partner == std::vector<int>{0, 1, 2});
    CHECK(gale_shapley(ident, ProposingSide::women).partner == std::vector<int>{0, 1, 2});
}

TEST_CASE("gale-shapley output is stable on random instances") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const PreferenceInstance inst = generate_two_sided(8, Seed{s});
        CHECK(is_stable(inst, gale_shapley(inst, ProposingSide::men)).verdict);
        CHECK(is_stable(inst, gale_shapley(inst, ProposingSide::women)).verdict);
    }
}

TEST_CASE("n=3 exhaustive: stable sets are non-empty and gale-shapley is man-optimal") {
    const auto matchings = oracle::all_two_sided_matchings(3);
    for_each_two_sided(3, [&](const PreferenceInstance& inst) {
        long long min_q = 1 << 20;
        int stable_count = 0;
        const Matching gs = gale_shapley(inst);
        for (const auto& wife : matchings)
            if (oracle::naive_stable(inst, wife)) {
                ++stable_count;
                min_q = std::min(min_q, rank_totals(inst, two_matching(wife)).q);
                // every man weakly prefers the proposal outcome
                for (int i = 0; i < 3; ++i)
                    REQUIRE(inst.man_rank(i, gs.partner[i]) <= inst.man_rank(i, wife[i]));
            }
        REQUIRE(stable_count > 0);  // Gale-Shapley theorem
        CHECK(is_stable(inst, gs).verdict);
        CHECK(rank_totals(inst, gs).q == min_q);
    });
}
