#include "exstab/stability.hpp"

#include <vector>

#include "exstab/error.hpp"

namespace exstab {
namespace {

void check_pair(const PreferenceInstance& inst, const Matching& m) {
    if (m.kind != MatchKind::two_sided) throw ContractError("expected a two-sided matching");
    if (m.size() != inst.n) throw ContractError("instance and matching sizes disagree");
    m.validate();
}

void check_pair(const OneSidedInstance& inst, const Matching& m) {
    if (m.kind != MatchKind::one_sided) throw ContractError("expected a one-sided matching");
    if (m.size() != inst.n) throw ContractError("instance and matching sizes disagree");
    m.validate();
}

}  // namespace

const char* witness_type_name(WitnessType t) {
    switch (t) {
        case WitnessType::classic_pair: return "classic";
        case WitnessType::man_exchange: return "man_exchange";
        case WitnessType::woman_exchange: return "woman_exchange";
        case WitnessType::member_exchange: return "member_exchange";
    }
    return "?";
}

BlockingReport is_exchange_stable(const PreferenceInstance& inst, const Matching& m) {
    check_pair(inst, m);
    const int n = inst.n;
    // Man pairs: (i1, i2) blocks iff each strictly prefers the other's wife.
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = i1 + 1; i2 < n; ++i2)
            if (inst.man_rank(i1, m.partner[i2]) < inst.man_rank(i1, m.partner[i1]) &&
                inst.man_rank(i2, m.partner[i1]) < inst.man_rank(i2, m.partner[i2]))
                return {false, Witness{WitnessType::man_exchange, i1, i2}};
    const std::vector<int> husband = m.inverse();
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = j1 + 1; j2 < n; ++j2)
            if (inst.woman_rank(j1, husband[j2]) < inst.woman_rank(j1, husband[j1]) &&
                inst.woman_rank(j2, husband[j1]) < inst.woman_rank(j2, husband[j2]))
                return {false, Witness{WitnessType::woman_exchange, j1, j2}};
    return {true, std::nullopt};
}

BlockingReport is_exchange_stable(const OneSidedInstance& inst, const Matching& m) {
    check_pair(inst, m);
    const int n = inst.n;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (m.partner[a] == b) continue;  // matched pairs are exempt
            if (inst.rank(a, m.partner[b]) < inst.rank(a, m.partner[a]) &&
                inst.rank(b, m.partner[a]) < inst.rank(b, m.partner[b]))
                return {false, Witness{WitnessType::member_exchange, a, b}};
        }
    return {true, std::nullopt};
}

BlockingReport is_stable(const PreferenceInstance& inst, const Matching& m) {
    check_pair(inst, m);
    const int n = inst.n;
    const std::vector<int> husband = m.inverse();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (m.partner[i] == j) continue;
            if (inst.man_rank(i, j) < inst.man_rank(i, m.partner[i]) &&
                inst.woman_rank(j, i) < inst.woman_rank(j, husband[j]))
                return {false, Witness{WitnessType::classic_pair, i, j}};
        }
    return {true, std::nullopt};
}

BlockingReport is_stable(const OneSidedInstance& inst, const Matching& m) {
    check_pair(inst, m);
    const int n = inst.n;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (m.partner[a] == b) continue;
            if (inst.rank(a, b) < inst.rank(a, m.partner[a]) &&
                inst.rank(b, a) < inst.rank(b, m.partner[b]))
                return {false, Witness{WitnessType::classic_pair, a, b}};
        }
    return {true, std::nullopt};
}

bool is_doubly_stable(const PreferenceInstance& inst, const Matching& m) {
    return is_exchange_stable(inst, m).verdict && is_stable(inst, m).verdict;
}

bool is_doubly_stable(const OneSidedInstance& inst, const Matching& m) {
    return is_exchange_stable(inst, m).verdict && is_stable(inst, m).verdict;
}

RankTotals rank_totals(const PreferenceInstance& inst, const Matching& m) {
    check_pair(inst, m);
    RankTotals t;
    t.kind = MatchKind::two_sided;
    const std::vector<int> husband = m.inverse();
    for (int i = 0; i < inst.n; ++i) t.q += inst.man_rank(i, m.partner[i]);
    for (int j = 0; j < inst.n; ++j) t.r += inst.woman_rank(j, husband[j]);
    return t;
}

RankTotals rank_totals(const OneSidedInstance& inst, const Matching& m) {
    check_pair(inst, m);
    RankTotals t;
    t.kind = MatchKind::one_sided;
    for (int i = 0; i < inst.n; ++i) t.r += inst.rank(i, m.partner[i]);
    return t;
}

Matching gale_shapley(const PreferenceInstance& inst, ProposingSide side) {
    const int n = inst.n;
    if (n < 1) throw ContractError("empty instance");

    // Build proposer preference orders from ranks.
    std::vector<std::vector<int>> order(static_cast<std::size_t>(n), std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int rank = side == ProposingSide::men ? inst.man_rank(i, j) : inst.woman_rank(i, j);
            order[i][rank - 1] = j;
        }
    auto reviewer_rank = [&](int j, int i) {
        return side == ProposingSide::men ? inst.woman_rank(j, i) : inst.man_rank(j, i);
    };

    std::vector<int> next_choice(static_cast<std::size_t>(n), 0);
    std::vector<int> held(static_cast<std::size_t>(n), -1);  // reviewer -> proposer on hold
    std::vector<int> free_stack(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) free_stack[i] = n - 1 - i;

    while (!free_stack.empty()) {
        const int i = free_stack.back();
        free_stack.pop_back();
        const int j = order[i][next_choice[i]++];
        if (held[j] < 0) {
            held[j] = i;
        } else if (reviewer_rank(j, i) < reviewer_rank(j, held[j])) {
            free_stack.push_back(held[j]);
            held[j] = i;
        } else {
            free_stack.push_back(i);
        }
    }

    Matching m;
    m.kind = MatchKind::two_sided;
    m.partner.resize(static_cast<std::size_t>(n));
    if (side == ProposingSide::men) {
        for (int j = 0; j < n; ++j) m.partner[held[j]] = j;
    } else {
        // reviewers are men: held[man] is the woman whose proposal he holds
        for (int man = 0; man < n; ++man) m.partner[man] = held[man];
    }
    return m;
}

}  // namespace exstab
