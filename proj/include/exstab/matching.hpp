#pragma once

#include <string>
#include <vector>

namespace exstab {

enum class MatchKind { two_sided, one_sided };

// Two-sided: partner[i] is the woman matched to man i (a bijection on 0..n-1).
// One-sided: partner[i] is the partner of member i (a fixed-point-free
// involution). Validation is explicit via validate().
struct Matching {
    MatchKind kind = MatchKind::two_sided;
    std::vector<int> partner;

    int size() const { return static_cast<int>(partner.size()); }
    void validate() const;  // throws ContractError

    // Two-sided inverse: husband of each woman.
    std::vector<int> inverse() const;

    bool operator==(const Matching&) const = default;
};

// Text format: header "match <two|one> <n>", then the n partners of
// participants 1..n (1-based), whitespace-separated.
std::string write_matching(const Matching& m);
Matching read_matching(const std::string& text);

}  // namespace exstab
