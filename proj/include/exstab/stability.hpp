#pragma once

#include <optional>
#include <string>

#include "exstab/instance.hpp"
#include "exstab/matching.hpp"

namespace exstab {

enum class WitnessType { classic_pair, man_exchange, woman_exchange, member_exchange };

const char* witness_type_name(WitnessType t);

// A pair that blocks the matching; 0-based participant indices. For a classic
// pair, `a` is the man (member) and `b` the woman (other member); for
// exchange pairs both lie on the same side and a < b.
struct Witness {
    WitnessType type;
    int a = 0;
    int b = 0;
};

// verdict true  -> the matching has the checked property, no witness.
// verdict false -> `witness` is the lexicographically smallest blocking pair
// (exchange checks scan man pairs before woman pairs).
struct BlockingReport {
    bool verdict = true;
    std::optional<Witness> witness;
};

// Exchange stability: no two men and no two women each strictly prefer the
// other's partner to their own. O(n^2).
BlockingReport is_exchange_stable(const PreferenceInstance& inst, const Matching& m);

// One-sided variant; the matched pair (i, M(i)) is exempt by definition.
BlockingReport is_exchange_stable(const OneSidedInstance& inst, const Matching& m);

// Classic stability: no unmatched pair prefers each other to their partners.
BlockingReport is_stable(const PreferenceInstance& inst, const Matching& m);
BlockingReport is_stable(const OneSidedInstance& inst, const Matching& m);

bool is_doubly_stable(const PreferenceInstance& inst, const Matching& m);
bool is_doubly_stable(const OneSidedInstance& inst, const Matching& m);

// Total partner ranks. Two-sided: q sums each man's rank of his wife, r sums
// each woman's rank of her husband; n <= q, r <= n^2. One-sided: r sums each
// member's rank of their partner (q unused, held at 0); n <= r <= n(n-1).
struct RankTotals {
    MatchKind kind = MatchKind::two_sided;
    long long q = 0;
    long long r = 0;
};

RankTotals rank_totals(const PreferenceInstance& inst, const Matching& m);
RankTotals rank_totals(const OneSidedInstance& inst, const Matching& m);

enum class ProposingSide { men, women };

// Deferred acceptance. The proposing side obtains its optimal stable matching;
// the result is always returned as man -> woman.
Matching gale_shapley(const PreferenceInstance& inst, ProposingSide side = ProposingSide::men);

}  // namespace exstab
