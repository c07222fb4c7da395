#pragma once

#include <utility>

#include "exstab/integral.hpp"
#include "exstab/matching.hpp"
#include "exstab/rational.hpp"

namespace exstab {

// ---- Exact expectation formulas ----------------------------------------
//
// Two-sided: P(M e-stable) = I_n^2 with I_n the K_n cube integral, and the
// expected number of e-stable matchings is n! * P. One-sided (n even):
// P(M e-stable) is the integral over the unmatched-pair system, the expected
// count is (n-1)!! * P, and the same integral is also the probability that M
// is classically stable. All results are exact rationals; the caps admit
// n <= 7 two-sided and n <= 6 one-sided with the default term cap.

Rational exact_p_estable_two_sided(int n, std::uint64_t term_cap = default_term_cap());
Rational exact_expected_count_two_sided(int n, std::uint64_t term_cap = default_term_cap());

Rational exact_p_estable_one_sided(int n, std::uint64_t term_cap = default_term_cap());
Rational exact_expected_count_one_sided(int n, std::uint64_t term_cap = default_term_cap());

// Value is independent of which matching is used; the default is
// {(1,2),(3,4),...}. Exposed for the matching-invariance check.
Rational exact_p_estable_one_sided_for(const Matching& m,
                                       std::uint64_t term_cap = default_term_cap());

// Squared-factor integral prod (1 - x_a x_b)^2 over the unmatched pairs.
Rational exact_p_doubly_one_sided(int n, std::uint64_t term_cap = default_term_cap());

// ---- Asymptotics ---------------------------------------------------------

double asymptotic_expected_two_sided(int n);  // sqrt(pi n / 2)
double asymptotic_expected_one_sided(int n);  // e^{1/2}

// ---- Second-moment rate function -----------------------------------------

struct RateFunctionPoint {
    double xi = 0;
    double h = 0;    // rate function value at xi
    double phi = 0;  // stationary-point scaling factor at xi
};

// Defined on (0, 1); throws ContractError outside.
RateFunctionPoint rate_function(double xi);

// k(nu) = n * phi(nu / n): the unique stationary point of the inner exponent.
double stationary_k(int n, int nu);

// Golden-section maximization of the rate function on (0,1) to absolute
// tolerance 1e-8 in xi. Returns (xi_max, h_max).
std::pair<double, double> maximize_rate_function();

// Log-scale lower bound on the falling second moment:
// (3/2) log n + n * h_max (two-sided), half the exponential term one-sided.
// A lower bound up to an unspecified constant factor.
double second_moment_lower_bound(int n, MatchKind side);

// ---- Combinatorial counters ----------------------------------------------

// Derangements pi(nu): pi(0)=1, pi(1)=0, pi(nu)=(nu-1)(pi(nu-1)+pi(nu-2)).
BigInt count_derangements(int nu);

// B(nu) = nu! * pi(nu): ordered pairs of bipartite perfect matchings on
// [nu] x [nu] with no common edge.
BigInt count_B(int nu);

// B(n, nu) = C(n,nu)^2 (n-nu)! B(nu). Requires 0 <= nu <= n.
BigInt count_B2(int n, int nu);

// Permutations of [nu] all of whose cycles are even of length >= 4;
// EGF exp(-x^2/2) / sqrt(1-x^2).
BigInt count_even_cycle_perms(int nu);

}  // namespace exstab
