#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qd/error.hpp"
#include "qd/fp.hpp"

namespace qd {

using Int = mpz_class;

// Exact rationals, always in lowest terms with positive denominator
// (mpq_class keeps that canonical form once canonicalize() has run; every
// constructor below canonicalizes eagerly so equality is structural).
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) fail(errc::internal, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_of(long n) { return Rat(n); }

inline bool is_zero(const Rat& a) { return sgn(a) == 0; }
inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline Rat mul_int(const Rat& a, long long k) { return a * Rat((long)k); }

// Serializes as "n/d", or plain "n" when the denominator is 1.
inline std::string rat_str(const Rat& a) { return a.get_str(); }

Rat parse_rat(const std::string& text);

inline Int num(const Rat& a) { return a.get_num(); }
inline Int den(const Rat& a) { return a.get_den(); }

// Naive height: max(|numerator|, denominator) in lowest terms.
inline Int rat_height(const Rat& a) {
    Int n = abs(a.get_num());
    Int d = a.get_den();
    return n > d ? n : d;
}

inline bool is_square(const Int& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Exact square root of a rational, if it exists (nonnegative root returned).
std::optional<Rat> rat_sqrt(const Rat& a);

inline uint64_t mod_p(const Int& n, uint64_t p) {
    return mpz_fdiv_ui(n.get_mpz_t(), p);
}

// Residue of a rational mod p; BadPrime if p divides the denominator.
inline Fp mod_p(const Rat& a, uint64_t p) {
    uint64_t d = mod_p(a.get_den(), p);
    if (d == 0) fail(errc::bad_prime, "denominator divisible by " + std::to_string(p));
    Fp nres{mod_p(a.get_num(), p), p};
    return nres / Fp{d, p};
}

// Deterministic trial-division primality test; every prime this project
// touches is below 10^6, so nothing fancier is needed.
bool is_small_prime(uint64_t n);

std::vector<uint64_t> primes_up_to(uint64_t n);

// Factorization of |n| by trial division up to 10^6 followed by Pollard rho.
std::vector<std::pair<Int, int>> factor(const Int& n);

std::vector<Int> divisors(const std::vector<std::pair<Int, int>>& fac);

// Largest s with s^2 dividing |n|, from a precomputed factorization.
Int square_root_part(const std::vector<std::pair<Int, int>>& fac);

} // namespace qd
