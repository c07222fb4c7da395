#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "exstab/seed.hpp"

namespace exstab {

// Two-sided (marriage) instance. Ranks are the canonical form: row i of `men`
// holds the rank (1 = most preferred .. n) of every woman in man i's list, so
// "does i prefer a to b" is a single comparison. Preference order is derived
// on demand. Indices are 0-based internally, 1-based in all file formats.
struct PreferenceInstance {
    int n = 0;
    std::vector<int> men;    // n*n; men[i*n+j] = rank of woman j for man i
    std::vector<int> women;  // n*n; women[j*n+i] = rank of man i for woman j

    int man_rank(int i, int j) const { return men[static_cast<std::size_t>(i) * n + j]; }
    int woman_rank(int j, int i) const { return women[static_cast<std::size_t>(j) * n + i]; }
};

// One-sided (roommates) instance on n members, n even. Row i ranks the other
// n-1 members 1..n-1; the diagonal is unused and held at 0.
struct OneSidedInstance {
    int n = 0;
    std::vector<int> ranks;  // n*n; ranks[i*n+j] = rank of j for i, j != i

    int rank(int i, int j) const { return ranks[static_cast<std::size_t>(i) * n + j]; }
};

using AnyInstance = std::variant<PreferenceInstance, OneSidedInstance>;

// Uniform over all (n!)^{2n} instances; each of the 2n rows is an independent
// Fisher-Yates permutation driven by the per-row seed mix_seed(seed, row).
PreferenceInstance generate_two_sided(int n, Seed seed);

// Uniform over all ((n-1)!)^n instances, n even.
OneSidedInstance generate_one_sided(int n, Seed seed);

inline constexpr std::uint64_t kDefaultInstanceCap = 1'000'000;

// Number of instances, or 0 on overflow past 2^64.
std::uint64_t instance_count_two_sided(int n);
std::uint64_t instance_count_one_sided(int n);

// Visit every instance exactly once, in lexicographic order over the
// concatenated rank rows. The callback receives a reusable buffer; copy it if
// it must outlive the call. Throws CapExceeded when the count exceeds `cap`.
void for_each_two_sided(int n, const std::function<void(const PreferenceInstance&)>& fn,
                        std::uint64_t cap = kDefaultInstanceCap);
void for_each_one_sided(int n, const std::function<void(const OneSidedInstance&)>& fn,
                        std::uint64_t cap = kDefaultInstanceCap);

// Text format (UTF-8, newline-delimited): header "two <n>" or "one <n>", then
// one preference-order line per participant (most-preferred first, 1-based;
// two-sided lists the n men then the n women). Blank lines and '#' comments
// are ignored. write/read are mutually inverse; the writer emits the
// canonical form (single spaces, no comments).
std::string write_instance(const PreferenceInstance& inst);
std::string write_instance(const OneSidedInstance& inst);
AnyInstance read_instance(const std::string& text);

int instance_size(const AnyInstance& inst);

}  // namespace exstab
