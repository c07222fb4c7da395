#include "exstab/enumerate.hpp"

#include <string>

#include "exstab/error.hpp"
#include "exstab/stability.hpp"

namespace exstab {

const char* stability_kind_name(StabilityKind k) {
    switch (k) {
        case StabilityKind::exchange: return "e-stable";
        case StabilityKind::classic: return "stable";
        case StabilityKind::doubly: return "doubly";
    }
    return "?";
}

namespace {

// Shared DFS for pruned search, the unpruned oracle and early-exit existence.
// `nodes` counts placements made, so the pruned tree is a prefix-closed subset
// of the naive tree on the same instance.
struct TwoSidedSearch {
    const PreferenceInstance& inst;
    StabilityKind kind;
    bool naive;
    bool retain;
    bool stop_first;
    int n;
    std::vector<int> wife, husband;
    EnumerationResult res;
    bool done = false;

    TwoSidedSearch(const PreferenceInstance& i, StabilityKind k, bool naive_, bool retain_,
                   bool stop_first_)
        : inst(i),
          kind(k),
          naive(naive_),
          retain(retain_),
          stop_first(stop_first_),
          n(i.n),
          wife(static_cast<std::size_t>(i.n), -1),
          husband(static_cast<std::size_t>(i.n), -1) {
        res.kind = k;
        res.side = MatchKind::two_sided;
    }

    // Blocks between man i (just assigned to wife[i]) and the fixed prefix.
    bool prefix_ok(int i) const {
        const int w = wife[i];
        const bool ex = kind != StabilityKind::classic;
        const bool cl = kind != StabilityKind::exchange;
        for (int i2 = 0; i2 < i; ++i2) {
            const int w2 = wife[i2];
            if (ex) {
                if (inst.man_rank(i2, w) < inst.man_rank(i2, w2) &&
                    inst.man_rank(i, w2) < inst.man_rank(i, w))
                    return false;  // man pair (i2, i)
                if (inst.woman_rank(w2, i) < inst.woman_rank(w2, i2) &&
                    inst.woman_rank(w, i2) < inst.woman_rank(w, i))
                    return false;  // woman pair (w2, w)
            }
            if (cl) {
                if (inst.man_rank(i, w2) < inst.man_rank(i, w) &&
                    inst.woman_rank(w2, i) < inst.woman_rank(w2, i2))
                    return false;  // classic (i, w2)
                if (inst.man_rank(i2, w) < inst.man_rank(i2, w2) &&
                    inst.woman_rank(w, i2) < inst.woman_rank(w, i))
                    return false;  // classic (i2, w)
            }
        }
        return true;
    }

    bool leaf_ok() const {
        Matching m{MatchKind::two_sided, wife};
        switch (kind) {
            case StabilityKind::exchange: return is_exchange_stable(inst, m).verdict;
            case StabilityKind::classic: return is_stable(inst, m).verdict;
            case StabilityKind::doubly: return is_doubly_stable(inst, m);
        }
        return false;
    }

    void rec(int i) {
        if (i == n) {
            if (!naive || leaf_ok()) {
                ++res.count;
                if (retain) res.matchings.push_back(Matching{MatchKind::two_sided, wife});
                if (stop_first) done = true;
            }
            return;
        }
        for (int w = 0; w < n && !done; ++w) {
            if (husband[w] >= 0) continue;
            wife[i] = w;
            husband[w] = i;
            ++res.nodes_visited;
            if (naive || prefix_ok(i)) rec(i + 1);
            wife[i] = -1;
            husband[w] = -1;
        }
    }
};

struct OneSidedSearch {
    const OneSidedInstance& inst;
    StabilityKind kind;
    bool naive;
    bool retain;
    bool stop_first;
    int n;
    std::vector<int> mate;
    EnumerationResult res;
    bool done = false;

    OneSidedSearch(const OneSidedInstance& i, StabilityKind k, bool naive_, bool retain_,
                   bool stop_first_)
        : inst(i),
          kind(k),
          naive(naive_),
          retain(retain_),
          stop_first(stop_first_),
          n(i.n),
          mate(static_cast<std::size_t>(i.n), -1) {
        res.kind = k;
        res.side = MatchKind::one_sided;
    }

    // Blocks between the new pair (i, j) and the already-matched members.
    bool prefix_ok(int i, int j) const {
        const bool ex = kind != StabilityKind::classic;
        const bool cl = kind != StabilityKind::exchange;
        for (int a = 0; a < n; ++a) {
            if (a == i || a == j || mate[a] < 0) continue;
            const int pa = mate[a];
            if (ex) {
                if (inst.rank(a, j) < inst.rank(a, pa) && inst.rank(i, pa) < inst.rank(i, j))
                    return false;  // member pair (a, i)
                if (inst.rank(a, i) < inst.rank(a, pa) && inst.rank(j, pa) < inst.rank(j, i))
                    return false;  // member pair (a, j)
            }
            if (cl) {
                if (inst.rank(a, i) < inst.rank(a, pa) && inst.rank(i, a) < inst.rank(i, j))
                    return false;  // classic (a, i)
                if (inst.rank(a, j) < inst.rank(a, pa) && inst.rank(j, a) < inst.rank(j, i))
                    return false;  // classic (a, j)
            }
        }
        return true;
    }

    bool leaf_ok() const {
        Matching m{MatchKind::one_sided, mate};
        switch (kind) {
            case StabilityKind::exchange: return is_exchange_stable(inst, m).verdict;
            case StabilityKind::classic: return is_stable(inst, m).verdict;
            case StabilityKind::doubly: return is_doubly_stable(inst, m);
        }
        return false;
    }

    void rec() {
        int i = 0;
        while (i < n && mate[i] >= 0) ++i;
        if (i == n) {
            if (!naive || leaf_ok()) {
                ++res.count;
                if (retain) res.matchings.push_back(Matching{MatchKind::one_sided, mate});
                if (stop_first) done = true;
            }
            return;
        }
        for (int j = i + 1; j < n && !done; ++j) {
            if (mate[j] >= 0) continue;
            mate[i] = j;
            mate[j] = i;
            ++res.nodes_visited;
            if (naive || prefix_ok(i, j)) rec();
            mate[i] = -1;
            mate[j] = -1;
        }
    }
};

void validate_two(const PreferenceInstance& inst) {
    if (inst.n < 1 || inst.men.size() != static_cast<std::size_t>(inst.n) * inst.n ||
        inst.women.size() != static_cast<std::size_t>(inst.n) * inst.n)
        throw ContractError("malformed two-sided instance");
}

void validate_one(const OneSidedInstance& inst) {
    if (inst.n < 2 || inst.n % 2 != 0 ||
        inst.ranks.size() != static_cast<std::size_t>(inst.n) * inst.n)
        throw ContractError("malformed one-sided instance");
}

constexpr int kNaiveCapTwoSided = 8;
constexpr int kNaiveCapOneSided = 10;

}  // namespace

EnumerationResult enumerate_pruned(const PreferenceInstance& inst, StabilityKind kind,
                                   bool retain) {
    validate_two(inst);
    TwoSidedSearch s(inst, kind, /*naive=*/false, retain, /*stop_first=*/false);
    s.rec(0);
    return std::move(s.res);
}

EnumerationResult enumerate_pruned(const OneSidedInstance& inst, StabilityKind kind, bool retain) {
    validate_one(inst);
    OneSidedSearch s(inst, kind, false, retain, false);
    s.rec();
    return std::move(s.res);
}

EnumerationResult enumerate_naive(const PreferenceInstance& inst, StabilityKind kind, bool retain) {
    validate_two(inst);
    if (inst.n > kNaiveCapTwoSided)
        throw CapExceeded("naive two-sided enumeration is capped at n = " +
                          std::to_string(kNaiveCapTwoSided) + " (" + std::to_string(inst.n) +
                          "! matchings requested)");
    TwoSidedSearch s(inst, kind, /*naive=*/true, retain, false);
    s.rec(0);
    return std::move(s.res);
}

EnumerationResult enumerate_naive(const OneSidedInstance& inst, StabilityKind kind, bool retain) {
    validate_one(inst);
    if (inst.n > kNaiveCapOneSided)
        throw CapExceeded("naive one-sided enumeration is capped at n = " +
                          std::to_string(kNaiveCapOneSided));
    OneSidedSearch s(inst, kind, true, retain, false);
    s.rec();
    return std::move(s.res);
}

EnumerationResult count_doubly_stable(const PreferenceInstance& inst, bool retain) {
    EnumerationResult estable = enumerate_pruned(inst, StabilityKind::exchange, /*retain=*/true);
    EnumerationResult out;
    out.kind = StabilityKind::doubly;
    out.side = MatchKind::two_sided;
    out.nodes_visited = estable.nodes_visited;
    for (const Matching& m : estable.matchings)
        if (is_stable(inst, m).verdict) {
            ++out.count;
            if (retain) out.matchings.push_back(m);
        }
    return out;
}

EnumerationResult count_doubly_stable(const OneSidedInstance& inst, bool retain) {
    EnumerationResult estable = enumerate_pruned(inst, StabilityKind::exchange, /*retain=*/true);
    EnumerationResult out;
    out.kind = StabilityKind::doubly;
    out.side = MatchKind::one_sided;
    out.nodes_visited = estable.nodes_visited;
    for (const Matching& m : estable.matchings)
        if (is_stable(inst, m).verdict) {
            ++out.count;
            if (retain) out.matchings.push_back(m);
        }
    return out;
}

bool exists_matching(const PreferenceInstance& inst, StabilityKind kind) {
    validate_two(inst);
    TwoSidedSearch s(inst, kind, false, false, /*stop_first=*/true);
    s.rec(0);
    return s.res.count > 0;
}

bool exists_matching(const OneSidedInstance& inst, StabilityKind kind) {
    validate_one(inst);
    OneSidedSearch s(inst, kind, false, false, true);
    s.rec();
    return s.res.count > 0;
}

}  // namespace exstab
