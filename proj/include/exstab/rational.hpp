#pragma once

#include <gmpxx.h>

#include <string>

namespace exstab {

// Carrier of all exact integral and counting results. GMP keeps the canonical
// form (gcd 1, positive denominator) on every operation; equality is exact.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string numerator_string(const Rational& q) { return q.get_num().get_str(); }
inline std::string denominator_string(const Rational& q) { return q.get_den().get_str(); }
inline double to_double(const Rational& q) { return q.get_d(); }

inline BigInt factorial(int n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// n!! with (-1)!! = 0!! = 1.
inline BigInt double_factorial(int n) {
    if (n <= 0) return BigInt(1);
    BigInt r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace exstab
