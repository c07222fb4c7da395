#pragma once

#include <cstdint>
#include <vector>

#include "exstab/instance.hpp"
#include "exstab/matching.hpp"

namespace exstab {

enum class StabilityKind { exchange, classic, doubly };

const char* stability_kind_name(StabilityKind k);

struct EnumerationResult {
    std::uint64_t count = 0;
    std::uint64_t nodes_visited = 0;         // placements made in the search tree
    std::vector<Matching> matchings;         // retained iff requested
    StabilityKind kind = StabilityKind::exchange;
    MatchKind side = MatchKind::two_sided;
};

// Backtracking with pairwise-block pruning. Two-sided search assigns men in
// index order to free women; one-sided search pairs the lowest unmatched
// member with each free candidate. A partial assignment is abandoned as soon
// as two already-fixed participants form a blocking pair of the requested
// kind; every blocking condition involves only the two participants and their
// partners, all fixed at assignment time, so pruning is exact.
EnumerationResult enumerate_pruned(const PreferenceInstance& inst, StabilityKind kind,
                                   bool retain = false);
EnumerationResult enumerate_pruned(const OneSidedInstance& inst, StabilityKind kind,
                                   bool retain = false);

// Same search tree with no pruning; every complete matching is filtered by the
// stability module's checker. Cross-validation oracle. Caps: n <= 8 two-sided,
// n <= 10 one-sided (refusal beyond).
EnumerationResult enumerate_naive(const PreferenceInstance& inst, StabilityKind kind,
                                  bool retain = false);
EnumerationResult enumerate_naive(const OneSidedInstance& inst, StabilityKind kind,
                                  bool retain = false);

// Intersection of the stable and e-stable sets (filters the e-stable
// enumeration through the classic checker).
EnumerationResult count_doubly_stable(const PreferenceInstance& inst, bool retain = false);
EnumerationResult count_doubly_stable(const OneSidedInstance& inst, bool retain = false);

// Early-exit existence test.
bool exists_matching(const PreferenceInstance& inst, StabilityKind kind);
bool exists_matching(const OneSidedInstance& inst, StabilityKind kind);

}  // namespace exstab
