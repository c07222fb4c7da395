#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "exstab/matching.hpp"
#include "exstab/rational.hpp"
#include "exstab/seed.hpp"

namespace exstab {

// A product system over the unit cube [0,1]^vertices:
//   integrand = prod over pairs (a,b) of (1 - x_a x_b)^exponent.
// Pairs are unordered, distinct, within range; exponent is 1 or 2.
struct PairSystem {
    struct Pair {
        int a = 0;
        int b = 0;
        int exponent = 1;
    };

    int vertices = 0;
    std::vector<Pair> pairs;

    void validate() const;  // throws ContractError

    // All pairs of K_m with exponent e.
    static PairSystem complete(int m, int exponent = 1);

    // Pairs (a, b != M(a)) of an n-member one-sided matching.
    static PairSystem unmatched(const Matching& m, int exponent = 1);

    // Leaves of the direct expansion: prod over pairs of (exponent + 1),
    // saturating at +inf. This is the cost estimate checked against the cap.
    double expansion_cost() const;
};

// Work cap for exact integration, in expansion leaves. Defaults to 2^24;
// the environment variable EXSTAB_TERM_CAP overrides it.
std::uint64_t default_term_cap();

// Exact value of the cube integral. Expands each (1-xy) factor into
// {1, -xy} (squared: {1, -2xy, x^2y^2}) and integrates monomials to
// prod 1/(degree+1); organized as a vertex-by-vertex fold that aggregates
// identical residual degree vectors, so the cost is far below the raw
// expansion for dense systems. Throws CapExceeded when expansion_cost()
// exceeds `term_cap`.
Rational cube_integral(const PairSystem& ps, std::uint64_t term_cap = default_term_cap());

// Sample-mean fallback estimator: (estimate, standard error of the mean) of
// the integrand over `samples` uniform cube points. Deterministic for a fixed
// seed regardless of thread count (fixed block decomposition).
std::pair<double, double> monte_carlo_integral(const PairSystem& ps, long samples, Seed seed,
                                               int threads = 0);

}  // namespace exstab
