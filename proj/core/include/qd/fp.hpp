#pragma once

#include <cassert>
#include <cstdint>
#include <string>

#include "qd/error.hpp"

namespace qd {

// Arithmetic modulo a small prime p (all moduli used are < 10^6, so products
// fit in 64 bits without reduction tricks).
struct Fp {
    uint64_t v = 0;
    uint64_t p = 0;
};

inline Fp fp(uint64_t v, uint64_t p) {
    assert(p > 0);
    return Fp{v % p, p};
}

inline Fp fp_from_int(long long v, uint64_t p) {
    long long r = v % (long long)p;
    if (r < 0) r += (long long)p;
    return Fp{(uint64_t)r, p};
}

inline bool is_zero(const Fp& a) { return a.v == 0; }
inline Fp zero_like(const Fp& a) { return Fp{0, a.p}; }
inline Fp one_like(const Fp& a) { return Fp{a.p == 1 ? 0 : 1, a.p}; }

inline Fp operator+(const Fp& a, const Fp& b) {
    assert(a.p == b.p);
    uint64_t s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return Fp{s, a.p};
}

inline Fp operator-(const Fp& a, const Fp& b) {
    assert(a.p == b.p);
    return Fp{a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p};
}

inline Fp operator-(const Fp& a) { return Fp{a.v == 0 ? 0 : a.p - a.v, a.p}; }

inline Fp operator*(const Fp& a, const Fp& b) {
    assert(a.p == b.p);
    return Fp{(a.v * b.v) % a.p, a.p};
}

inline bool operator==(const Fp& a, const Fp& b) { return a.p == b.p && a.v == b.v; }
inline bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

inline uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}

inline Fp inv(const Fp& a) {
    if (a.v == 0) fail(errc::internal, "division by zero mod " + std::to_string(a.p));
    return Fp{pow_mod(a.v, a.p - 2, a.p), a.p};
}

inline Fp operator/(const Fp& a, const Fp& b) { return a * inv(b); }

inline Fp mul_int(const Fp& a, long long k) { return a * fp_from_int(k, a.p); }

// Euler criterion a^((p-1)/2), mapped to {-1, 0, +1}.  Requires p an odd prime.
inline int legendre(uint64_t a, uint64_t p) {
    assert(p > 2);
    a %= p;
    if (a == 0) return 0;
    uint64_t e = pow_mod(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

inline std::string to_string(const Fp& a) { return std::to_string(a.v); }

} // namespace qd
