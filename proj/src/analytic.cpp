#include "exstab/analytic.hpp"

#include <cmath>

#include "exstab/error.hpp"

namespace exstab {
namespace {

Matching canonical_one_sided(int n) {
    Matching m;
    m.kind = MatchKind::one_sided;
    m.partner.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; i += 2) {
        m.partner[i] = i + 1;
        m.partner[i + 1] = i;
    }
    return m;
}

void require_even(int n) {
    if (n < 2 || n % 2 != 0) throw ContractError("one-sided market needs even n >= 2");
}

double phi_impl(double x) { return 2 * x * x / (1 - x + std::sqrt(1 - 2 * x + 5 * x * x)); }

}  // namespace

Rational exact_p_estable_two_sided(int n, std::uint64_t term_cap) {
    if (n < 1) throw ContractError("two-sided market needs n >= 1");
    const Rational i = cube_integral(PairSystem::complete(n), term_cap);
    return i * i;
}

Rational exact_expected_count_two_sided(int n, std::uint64_t term_cap) {
    return Rational(factorial(n)) * exact_p_estable_two_sided(n, term_cap);
}

Rational exact_p_estable_one_sided_for(const Matching& m, std::uint64_t term_cap) {
    return cube_integral(PairSystem::unmatched(m, 1), term_cap);
}

Rational exact_p_estable_one_sided(int n, std::uint64_t term_cap) {
    require_even(n);
    return exact_p_estable_one_sided_for(canonical_one_sided(n), term_cap);
}

Rational exact_expected_count_one_sided(int n, std::uint64_t term_cap) {
    return Rational(double_factorial(n - 1)) * exact_p_estable_one_sided(n, term_cap);
}

Rational exact_p_doubly_one_sided(int n, std::uint64_t term_cap) {
    require_even(n);
    return cube_integral(PairSystem::unmatched(canonical_one_sided(n), 2), term_cap);
}

double asymptotic_expected_two_sided(int n) {
    if (n < 1) throw ContractError("n >= 1 required");
    return std::sqrt(M_PI * n / 2.0);
}

double asymptotic_expected_one_sided(int) { return std::exp(0.5); }

RateFunctionPoint rate_function(double xi) {
    if (!(xi > 0.0 && xi < 1.0)) throw ContractError("rate function domain is (0, 1)");
    const double root = std::sqrt(1 - 2 * xi + 5 * xi * xi);
    RateFunctionPoint p;
    p.xi = xi;
    p.h = -(1 - xi) * std::log(1 - xi) + 4 * xi * std::log((1 + xi + root) / (1 - xi + root)) -
          (1 + xi) * std::log((1 + 3 * xi * xi + (xi + 1) * root) / (1 - xi + root));
    p.phi = phi_impl(xi);
    return p;
}

double stationary_k(int n, int nu) {
    if (n < 1 || nu < 1 || nu >= n) throw ContractError("stationary_k needs 0 < nu < n");
    return n * phi_impl(static_cast<double>(nu) / n);
}

std::pair<double, double> maximize_rate_function() {
    // Golden-section search; the rate function is unimodal on (0, 1).
    const double inv_gold = (std::sqrt(5.0) - 1) / 2;
    double a = 1e-9, b = 1 - 1e-9;
    double c = b - inv_gold * (b - a);
    double d = a + inv_gold * (b - a);
    double fc = rate_function(c).h, fd = rate_function(d).h;
    while (b - a > 1e-8) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gold * (b - a);
            fc = rate_function(c).h;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gold * (b - a);
            fd = rate_function(d).h;
        }
    }
    const double xi = (a + b) / 2;
    return {xi, rate_function(xi).h};
}

double second_moment_lower_bound(int n, MatchKind side) {
    if (n < 4) throw ContractError("second_moment_lower_bound needs n >= 4");
    static const double h_max = maximize_rate_function().second;
    const double exponent = side == MatchKind::two_sided ? n * h_max : n * h_max / 2;
    return 1.5 * std::log(static_cast<double>(n)) + exponent;
}

BigInt count_derangements(int nu) {
    if (nu < 0) throw ContractError("negative argument");
    BigInt prev2 = 1, prev1 = 0;  // pi(0), pi(1)
    if (nu == 0) return prev2;
    if (nu == 1) return prev1;
    BigInt cur;
    for (int i = 2; i <= nu; ++i) {
        cur = BigInt(i - 1) * (prev1 + prev2);
        prev2 = prev1;
        prev1 = cur;
    }
    return cur;
}

BigInt count_B(int nu) { return factorial(nu) * count_derangements(nu); }

BigInt count_B2(int n, int nu) {
    if (nu < 0 || nu > n) throw ContractError("count_B2 needs 0 <= nu <= n");
    const BigInt c = binomial(n, nu);
    return c * c * factorial(n - nu) * count_B(nu);
}

BigInt count_even_cycle_perms(int nu) {
    if (nu < 0) throw ContractError("negative argument");
    std::vector<BigInt> b(static_cast<std::size_t>(nu) + 1);
    b[0] = 1;
    for (int m = 1; m <= nu; ++m) {
        BigInt total = 0;
        BigInt falling = m - 1;  // (m-1)!/(m-j)! for j = 2
        for (int j = 2; j <= m; ++j) {
            if (j >= 4 && j % 2 == 0) total += falling * b[static_cast<std::size_t>(m - j)];
            falling *= m - j;  // extend to the next j
        }
        b[static_cast<std::size_t>(m)] = total;
    }
    return b[static_cast<std::size_t>(nu)];
}

}  // namespace exstab
