#include "exstab/instance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "exstab/error.hpp"

namespace exstab {
namespace {

// Fisher-Yates on the preference order (most-preferred first), then inverted
// into a rank row. Exactly uniform: below() rejects modulo bias.
void random_rank_row(int* row, int count, const int* candidates, std::uint64_t row_seed) {
    std::vector<int> order(candidates, candidates + count);
    SplitMix rng(row_seed);
    for (int i = count - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[i], order[j]);
    }
    for (int pos = 0; pos < count; ++pos) row[order[pos]] = pos + 1;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > ~std::uint64_t{0} / base) return 0;  // overflow
        r *= base;
    }
    return r;
}

std::uint64_t factorial_u64(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

void require_cap(std::uint64_t total, std::uint64_t cap, const char* what) {
    if (total == 0 || total > cap) {
        std::ostringstream os;
        os << "exhaustive enumeration of " << what << " needs ";
        if (total == 0)
            os << "more than 2^64";
        else
            os << total;
        os << " instances, cap is " << cap;
        throw CapExceeded(os.str());
    }
}

}  // namespace

PreferenceInstance generate_two_sided(int n, Seed seed) {
    if (n < 1) throw ContractError("two-sided instance needs n >= 1");
    PreferenceInstance inst;
    inst.n = n;
    inst.men.resize(static_cast<std::size_t>(n) * n);
    inst.women.resize(static_cast<std::size_t>(n) * n);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < n; ++i)
        random_rank_row(&inst.men[static_cast<std::size_t>(i) * n], n, all.data(),
                        mix_seed(seed.value, static_cast<std::uint64_t>(i)));
    for (int j = 0; j < n; ++j)
        random_rank_row(&inst.women[static_cast<std::size_t>(j) * n], n, all.data(),
                        mix_seed(seed.value, static_cast<std::uint64_t>(n) + j));
    return inst;
}

OneSidedInstance generate_one_sided(int n, Seed seed) {
    if (n < 2 || n % 2 != 0) throw ContractError("one-sided instance needs even n >= 2");
    OneSidedInstance inst;
    inst.n = n;
    inst.ranks.assign(static_cast<std::size_t>(n) * n, 0);
    std::vector<int> others(n - 1);
    for (int i = 0; i < n; ++i) {
        int k = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) others[k++] = j;
        // ranks land at the candidates' own indices
        std::vector<int> order(others);
        SplitMix rng(mix_seed(seed.value, static_cast<std::uint64_t>(i)));
        for (int a = n - 2; a > 0; --a) {
            const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(a) + 1));
            std::swap(order[a], order[b]);
        }
        for (int pos = 0; pos < n - 1; ++pos)
            inst.ranks[static_cast<std::size_t>(i) * n + order[pos]] = pos + 1;
    }
    return inst;
}

std::uint64_t instance_count_two_sided(int n) {
    return checked_pow(factorial_u64(n), 2 * n);
}

std::uint64_t instance_count_one_sided(int n) {
    return checked_pow(factorial_u64(n - 1), n);
}

void for_each_two_sided(int n, const std::function<void(const PreferenceInstance&)>& fn,
                        std::uint64_t cap) {
    if (n < 1) throw ContractError("two-sided instance needs n >= 1");
    require_cap(instance_count_two_sided(n), cap, "two-sided instances");

    // Odometer over 2n rank rows, the last row cycling fastest; each row runs
    // through the n! permutations in lexicographic order.
    PreferenceInstance inst;
    inst.n = n;
    inst.men.resize(static_cast<std::size_t>(n) * n);
    inst.women.resize(static_cast<std::size_t>(n) * n);
    auto row_begin = [&](int r) {
        return r < n ? inst.men.begin() + static_cast<std::ptrdiff_t>(r) * n
                     : inst.women.begin() + static_cast<std::ptrdiff_t>(r - n) * n;
    };
    for (int r = 0; r < 2 * n; ++r) {
        std::iota(row_begin(r), row_begin(r) + n, 1);
    }
    for (;;) {
        fn(inst);
        int r = 2 * n - 1;
        while (r >= 0 && !std::next_permutation(row_begin(r), row_begin(r) + n)) {
            // wrapped to the identity; carry into the previous row
            --r;
        }
        if (r < 0) return;
    }
}

void for_each_one_sided(int n, const std::function<void(const OneSidedInstance&)>& fn,
                        std::uint64_t cap) {
    if (n < 2 || n % 2 != 0) throw ContractError("one-sided instance needs even n >= 2");
    require_cap(instance_count_one_sided(n), cap, "one-sided instances");

    OneSidedInstance inst;
    inst.n = n;
    inst.ranks.assign(static_cast<std::size_t>(n) * n, 0);
    // Per-row rank values over the n-1 off-diagonal slots, in lex order.
    std::vector<std::vector<int>> rows(n, std::vector<int>(n - 1));
    for (auto& row : rows) std::iota(row.begin(), row.end(), 1);
    auto install = [&](int i) {
        int k = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) inst.ranks[static_cast<std::size_t>(i) * n + j] = rows[i][k++];
    };
    for (int i = 0; i < n; ++i) install(i);
    for (;;) {
        fn(inst);
        int r = n - 1;
        while (r >= 0 && !std::next_permutation(rows[r].begin(), rows[r].end())) --r;
        if (r < 0) return;
        for (int i = r; i < n; ++i) install(i);
    }
}

namespace {

// order of a rank row: order[rank-1] = participant index (0-based)
std::vector<int> order_from_ranks(const int* row, const std::vector<int>& candidates) {
    std::vector<int> order(candidates.size());
    for (int j : candidates) order[row[j] - 1] = j;
    return order;
}

void append_order_line(std::string& out, const std::vector<int>& order) {
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(order[k] + 1);
    }
    out += '\n';
}

}  // namespace

std::string write_instance(const PreferenceInstance& inst) {
    const int n = inst.n;
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::string out = "two " + std::to_string(n) + "\n";
    for (int i = 0; i < n; ++i)
        append_order_line(out, order_from_ranks(&inst.men[static_cast<std::size_t>(i) * n], all));
    for (int j = 0; j < n; ++j)
        append_order_line(out,
                          order_from_ranks(&inst.women[static_cast<std::size_t>(j) * n], all));
    return out;
}

std::string write_instance(const OneSidedInstance& inst) {
    const int n = inst.n;
    std::string out = "one " + std::to_string(n) + "\n";
    for (int i = 0; i < n; ++i) {
        std::vector<int> order(n - 1);
        for (int j = 0; j < n; ++j)
            if (j != i) order[inst.rank(i, j) - 1] = j;
        append_order_line(out, order);
    }
    return out;
}

namespace {

struct LineReader {
    std::istringstream in;
    int line_no = 0;
    explicit LineReader(const std::string& text) : in(text) {}

    // next content line, with comments and blanks skipped
    bool next(std::string& out) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            out = line;
            return true;
        }
        return false;
    }
};

std::vector<int> parse_ints(const std::string& line, int line_no) {
    std::istringstream is(line);
    std::vector<int> vals;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            vals.push_back(v);
        } catch (const std::exception&) {
            throw ParseError(line_no, "expected integer, got \"" + tok + "\"");
        }
    }
    return vals;
}

// order line (1-based indices over `universe`) -> rank row written into row[j]
void ranks_from_order(const std::vector<int>& order, const std::vector<int>& universe, int* row,
                      int stride_n, int line_no) {
    if (order.size() != universe.size())
        throw ParseError(line_no, "expected " + std::to_string(universe.size()) + " entries, got " +
                                      std::to_string(order.size()));
    std::vector<char> seen(static_cast<std::size_t>(stride_n), 0);
    std::vector<char> allowed(static_cast<std::size_t>(stride_n), 0);
    for (int u : universe) allowed[u] = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int j = order[k] - 1;
        if (j < 0 || j >= stride_n || !allowed[j])
            throw ParseError(line_no, "index " + std::to_string(order[k]) + " out of range");
        if (seen[j]) throw ParseError(line_no, "row is not a permutation");
        seen[j] = 1;
        row[j] = static_cast<int>(k) + 1;
    }
}

}  // namespace

AnyInstance read_instance(const std::string& text) {
    LineReader reader(text);
    std::string line;
    if (!reader.next(line)) throw ParseError(1, "missing header");
    std::istringstream hs(line);
    std::string tag;
    int n = 0;
    if (!(hs >> tag >> n) || (tag != "two" && tag != "one"))
        throw ParseError(reader.line_no, "expected header \"two <n>\" or \"one <n>\"");
    std::string rest;
    if (hs >> rest) throw ParseError(reader.line_no, "trailing tokens after header");

    if (tag == "two") {
        if (n < 1) throw ParseError(reader.line_no, "two-sided instance needs n >= 1");
        PreferenceInstance inst;
        inst.n = n;
        inst.men.assign(static_cast<std::size_t>(n) * n, 0);
        inst.women.assign(static_cast<std::size_t>(n) * n, 0);
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        for (int r = 0; r < 2 * n; ++r) {
            if (!reader.next(line))
                throw ParseError(reader.line_no + 1, "unexpected end of input: expected " +
                                                         std::to_string(2 * n) + " rows");
            int* row = r < n ? &inst.men[static_cast<std::size_t>(r) * n]
                             : &inst.women[static_cast<std::size_t>(r - n) * n];
            ranks_from_order(parse_ints(line, reader.line_no), all, row, n, reader.line_no);
        }
        if (reader.next(line)) throw ParseError(reader.line_no, "trailing content after instance");
        return inst;
    }

    if (n < 2 || n % 2 != 0) throw ParseError(reader.line_no, "one-sided instance needs even n >= 2");
    OneSidedInstance inst;
    inst.n = n;
    inst.ranks.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        if (!reader.next(line))
            throw ParseError(reader.line_no + 1, "unexpected end of input: expected " +
                                                     std::to_string(n) + " rows");
        std::vector<int> others;
        others.reserve(n - 1);
        for (int j = 0; j < n; ++j)
            if (j != i) others.push_back(j);
        ranks_from_order(parse_ints(line, reader.line_no), others,
                         &inst.ranks[static_cast<std::size_t>(i) * n], n, reader.line_no);
    }
    if (reader.next(line)) throw ParseError(reader.line_no, "trailing content after instance");
    return inst;
}

int instance_size(const AnyInstance& inst) {
    return std::visit([](const auto& v) { return v.n; }, inst);
}

}  // namespace exstab
