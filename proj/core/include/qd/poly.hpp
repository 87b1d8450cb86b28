#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "qd/error.hpp"
#include "qd/fp.hpp"
#include "qd/rational.hpp"

namespace qd {

// Dense univariate polynomial over a field K (K = Rat or Fp).  Coefficient i
// multiplies x^i; the vector is trimmed so the back is nonzero.  The zero
// polynomial is the empty vector, with degree -1.
template <class K>
struct Poly {
    std::vector<K> c;

    Poly() = default;
    explicit Poly(std::vector<K> v) : c(std::move(v)) { trim(); }

    int deg() const { return (int)c.size() - 1; }
    bool zero() const { return c.empty(); }
    const K& lc() const {
        assert(!c.empty());
        return c.back();
    }

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    K coeff(size_t i, const K& model) const { return i < c.size() ? c[i] : zero_like(model); }

    K eval(const K& x) const {
        if (c.empty()) return zero_like(x);
        K acc = c.back();
        for (size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
};

using UniPoly = Poly<Rat>;
using FpPoly = Poly<Fp>;

template <class K>
Poly<K> operator+(const Poly<K>& a, const Poly<K>& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    std::vector<K> v = a.c.size() >= b.c.size() ? a.c : b.c;
    const auto& small = a.c.size() >= b.c.size() ? b.c : a.c;
    for (size_t i = 0; i < small.size(); i++) v[i] = v[i] + small[i];
    return Poly<K>(std::move(v));
}

template <class K>
Poly<K> operator-(const Poly<K>& a) {
    std::vector<K> v = a.c;
    for (auto& x : v) x = -x;
    return Poly<K>(std::move(v));
}

template <class K>
Poly<K> operator-(const Poly<K>& a, const Poly<K>& b) {
    return a + (-b);
}

template <class K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
    if (a.zero() || b.zero()) return Poly<K>{};
    std::vector<K> v(a.c.size() + b.c.size() - 1, zero_like(a.c[0]));
    for (size_t i = 0; i < a.c.size(); i++)
        for (size_t j = 0; j < b.c.size(); j++) v[i + j] = v[i + j] + a.c[i] * b.c[j];
    return Poly<K>(std::move(v));
}

template <class K>
Poly<K> operator*(const K& s, const Poly<K>& a) {
    std::vector<K> v = a.c;
    for (auto& x : v) x = s * x;
    return Poly<K>(std::move(v));
}

template <class K>
bool operator==(const Poly<K>& a, const Poly<K>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); i++)
        if (!(a.c[i] == b.c[i])) return false;
    return true;
}

template <class K>
Poly<K> monomial(const K& coeff, int degree) {
    if (is_zero(coeff)) return Poly<K>{};
    std::vector<K> v((size_t)degree + 1, zero_like(coeff));
    v.back() = coeff;
    return Poly<K>(std::move(v));
}

// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <class K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& a, const Poly<K>& b) {
    if (b.zero()) fail(errc::zero_polynomial, "division by zero polynomial");
    Poly<K> r = a;
    if (a.deg() < b.deg()) return {Poly<K>{}, r};
    std::vector<K> q((size_t)(a.deg() - b.deg()) + 1, zero_like(b.lc()));
    while (!r.zero() && r.deg() >= b.deg()) {
        K s = r.lc() / b.lc();
        int k = r.deg() - b.deg();
        q[(size_t)k] = s;
        for (int i = 0; i <= b.deg(); i++)
            r.c[(size_t)(i + k)] = r.c[(size_t)(i + k)] - s * b.c[(size_t)i];
        r.trim();
    }
    return {Poly<K>(std::move(q)), r};
}

template <class K>
Poly<K> derivative(const Poly<K>& a) {
    if (a.deg() < 1) return Poly<K>{};
    std::vector<K> v(a.c.size() - 1, zero_like(a.c[0]));
    for (size_t i = 1; i < a.c.size(); i++) v[i - 1] = mul_int(a.c[i], (long long)i);
    return Poly<K>(std::move(v));
}

template <class K>
Poly<K> monic(const Poly<K>& a) {
    if (a.zero()) return a;
    K inv_lc = one_like(a.lc()) / a.lc();
    return inv_lc * a;
}

// Monic gcd; gcd(a, 0) = monic(a).
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.zero()) {
        Poly<K> r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

template <class K>
bool is_squarefree(const Poly<K>& f) {
    if (f.zero()) fail(errc::zero_polynomial, "squarefreeness of zero polynomial");
    return poly_gcd(f, derivative(f)).deg() <= 0;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + prem, deg prem < deg b.
template <class K>
Poly<K> prem(const Poly<K>& a, const Poly<K>& b) {
    assert(!b.zero());
    Poly<K> r = a;
    int delta = a.deg() - b.deg();
    if (delta < 0) return r;
    K d = b.lc();
    int e = delta + 1;
    while (!r.zero() && r.deg() >= b.deg()) {
        Poly<K> t = monomial(r.lc(), r.deg() - b.deg());
        r = d * r - t * b;
        e--;
    }
    K scale = one_like(d);
    for (; e > 0; e--) scale = scale * d;
    return scale * r;
}

template <class K>
K pow_k(K base, int e) {
    K r = one_like(base);
    for (; e > 0; e--) r = r * base;
    return r;
}

// Resultant by the subresultant pseudo-remainder sequence (Cohen, Alg. 3.3.7);
// keeps intermediate coefficients under control on degree-8 inputs.
template <class K>
K resultant(Poly<K> a, Poly<K> b) {
    if (a.zero() || b.zero()) fail(errc::zero_polynomial, "resultant of zero polynomial");
    K one = one_like(a.lc());
    int s = 1;
    if (a.deg() < b.deg()) {
        if ((a.deg() & 1) && (b.deg() & 1)) s = -s;
        std::swap(a, b);
    }
    if (b.deg() == 0) return (s < 0 ? -one : one) * pow_k(b.lc(), a.deg());
    K g = one, h = one;
    while (true) {
        int da = a.deg(), db = b.deg();
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        Poly<K> r = prem(a, b);
        a = b;
        b = (one / (g * pow_k(h, delta))) * r;
        g = a.lc();
        h = delta == 0 ? h : pow_k(g, delta) / pow_k(h, delta - 1);
        if (b.zero()) return zero_like(one);
        if (b.deg() == 0) {
            K res = pow_k(b.lc(), a.deg()) / pow_k(h, a.deg() - 1);
            return s < 0 ? -res : res;
        }
    }
}

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f).
template <class K>
K discriminant(const Poly<K>& f) {
    if (f.deg() < 1) fail(errc::zero_polynomial, "discriminant needs degree >= 1");
    Poly<K> fp = derivative(f);
    if (fp.zero()) return zero_like(f.lc());
    K r = resultant(f, fp) / f.lc();
    int d = f.deg();
    return ((d * (d - 1) / 2) % 2) ? -r : r;
}

// --- Rat-specific helpers ---------------------------------------------------

inline Poly<Rat> poly_from_longs(const std::vector<long>& v) {
    std::vector<Rat> c;
    c.reserve(v.size());
    for (long x : v) c.push_back(Rat(x));
    return Poly<Rat>(std::move(c));
}

// Scales f by the lcm of the coefficient denominators divided by the content,
// giving a primitive integer polynomial; returns it (same roots as f).
inline Poly<Rat> primitive_integer(const Poly<Rat>& f) {
    if (f.zero()) return f;
    Int l = 1;
    for (const auto& q : f.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    Int g = 0;
    for (const auto& q : f.c) {
        Int n = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    if (g == 0) g = 1;
    Rat scale = make_rat(l, g);
    return scale * f;
}

inline Fp reduce_coeff_mod_p(const Rat& q, uint64_t p) { return mod_p(q, p); }

// Coefficientwise residues; the degree may drop when p divides the leading
// coefficient.  BadPrime if p divides a denominator.
inline FpPoly reduce_mod_p(const Poly<Rat>& f, uint64_t p) {
    std::vector<Fp> v;
    v.reserve(f.c.size());
    for (const auto& q : f.c) v.push_back(mod_p(q, p));
    return FpPoly(std::move(v));
}

inline Poly<Rat> shift_arg(const Poly<Rat>& f, const Rat& x0) {
    // f(x + x0) by Horner
    Poly<Rat> acc;
    Poly<Rat> lin(std::vector<Rat>{x0, Rat(1)});
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = acc * lin + Poly<Rat>(std::vector<Rat>{f.c[i]});
    }
    return acc;
}

// x^n f(1/x) for declared degree n >= deg f.
inline Poly<Rat> reverse_poly(const Poly<Rat>& f, int n) {
    assert(n >= f.deg());
    std::vector<Rat> v((size_t)n + 1, Rat(0));
    for (size_t i = 0; i < f.c.size(); i++) v[(size_t)n - i] = f.c[i];
    return Poly<Rat>(std::move(v));
}

// Number of distinct real roots via Sturm chains (exact, no floating point).
int sturm_real_roots(const Poly<Rat>& f);

// Integer roots of a monic integer cubic x^3 + a x + b (used by torsion
// enumeration); returns all of them.
std::vector<Int> monic_cubic_integer_roots(const Int& a, const Int& b);

} // namespace qd
