// Exact integer and rational scalars used throughout the geometry code.
// BigInt/Rat are GMP-backed; everything downstream assumes exactness.

#pragma once

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyml {

using BigInt = mpz_class;
using Rat = mpq_class;

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Quotient a/b for exactly divisible operands; throws otherwise.
inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    if (b == 0) throw std::invalid_argument("exact_div: division by zero");
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw std::invalid_argument("exact_div: not divisible");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// gcd of absolute values; 0 iff every entry is 0.
inline BigInt gcd_of_vector(std::span<const BigInt> v) {
    if (v.empty()) throw std::invalid_argument("gcd_of_vector: empty input");
    BigInt g = 0;
    for (const BigInt& x : v) g = gcd(g, x);
    return g;
}

inline BigInt gcd_of_vector(const std::vector<BigInt>& v) {
    return gcd_of_vector(std::span<const BigInt>(v));
}

inline bool is_primitive(const std::vector<BigInt>& v) {
    return gcd_of_vector(v) == 1;
}

/// Reduced rational n/d with positive denominator.
inline Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline const BigInt& rat_num(const Rat& r) { return r.get_num(); }
inline const BigInt& rat_den(const Rat& r) { return r.get_den(); }

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

/// Largest integer <= r.
inline BigInt rat_floor(const Rat& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

/// Smallest integer >= r.
inline BigInt rat_ceil(const Rat& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

/// mpz_class has no long long constructor; on LP64 a long holds any long long.
inline BigInt to_big(long long v) { return BigInt(static_cast<long>(v)); }

/// Checked narrowing; desk-scale quantities always fit.
inline long long to_int64(const BigInt& x) {
    if (!x.fits_slong_p())
        throw std::overflow_error("to_int64: value out of range: " + x.get_str());
    return static_cast<long long>(x.get_si());
}

inline std::string rat_to_string(const Rat& r) {
    if (rat_is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

}  // namespace polyml
