#include "exstab/matching.hpp"

#include <sstream>
#include <vector>

#include "exstab/error.hpp"

namespace exstab {

void Matching::validate() const {
    const int n = size();
    if (n == 0) throw ContractError("empty matching");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const int p = partner[i];
        if (p < 0 || p >= n) throw ContractError("matching partner out of range");
        if (kind == MatchKind::two_sided) {
            if (seen[p]) throw ContractError("two-sided matching is not a bijection");
            seen[p] = 1;
        } else {
            if (p == i) throw ContractError("one-sided matching has a fixed point");
            if (partner[p] != i) throw ContractError("one-sided matching is not an involution");
        }
    }
    if (kind == MatchKind::one_sided && n % 2 != 0)
        throw ContractError("one-sided matching needs even n");
}

std::vector<int> Matching::inverse() const {
    std::vector<int> inv(partner.size());
    for (int i = 0; i < size(); ++i) inv[partner[i]] = i;
    return inv;
}

std::string write_matching(const Matching& m) {
    std::string out = "match ";
    out += m.kind == MatchKind::two_sided ? "two " : "one ";
    out += std::to_string(m.size());
    out += '\n';
    for (int i = 0; i < m.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(m.partner[i] + 1);
    }
    out += '\n';
    return out;
}

Matching read_matching(const std::string& text) {
    std::istringstream in(text);
    std::string tag, side;
    int n = 0;
    if (!(in >> tag >> side >> n) || tag != "match" || (side != "two" && side != "one"))
        throw ParseError(1, "expected header \"match <two|one> <n>\"");
    if (n < 1) throw ParseError(1, "matching needs n >= 1");
    Matching m;
    m.kind = side == "two" ? MatchKind::two_sided : MatchKind::one_sided;
    m.partner.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int v = 0;
        if (!(in >> v)) throw ParseError(2, "expected " + std::to_string(n) + " partners");
        m.partner[i] = v - 1;
    }
    std::string extra;
    if (in >> extra) throw ParseError(2, "trailing content after the " + std::to_string(n) + " partners");
    m.validate();
    return m;
}

}  // namespace exstab
