#pragma once

#include <cassert>
#include <functional>
#include <vector>

#include "qd/binform.hpp"
#include "qd/mat3.hpp"

namespace qd {

// Dense homogeneous ternary form of degree d in X, Y, Z.  Monomial
// X^i Y^j Z^(d-i-j) sits at index idx(i, j).
template <class K>
struct TernForm {
    int d = 0;
    std::vector<K> c;

    TernForm() = default;
    TernForm(int degree, const K& model) : d(degree) {
        c.assign(count(degree), zero_like(model));
    }

    static size_t count(int degree) { return (size_t)(degree + 1) * (degree + 2) / 2; }

    size_t idx(int i, int j) const {
        assert(i >= 0 && j >= 0 && i + j <= d);
        // blocks with X-exponent d, d-1, ..., i+1 come first
        size_t off = 0;
        for (int ii = d; ii > i; ii--) off += (size_t)(d - ii) + 1;
        return off + (size_t)j;
    }

    const K& at(int i, int j) const { return c[idx(i, j)]; }
    K& at(int i, int j) { return c[idx(i, j)]; }

    bool zero() const {
        for (const auto& x : c)
            if (!is_zero(x)) return false;
        return true;
    }

    K eval(const K& x, const K& y, const K& z) const {
        K acc = zero_like(x);
        for (int i = d; i >= 0; i--)
            for (int j = 0; j + i <= d; j++) {
                const K& co = at(i, j);
                if (is_zero(co)) continue;
                acc = acc + co * pow_k(x, i) * pow_k(y, j) * pow_k(z, d - i - j);
            }
        return acc;
    }

    template <class F>
    void for_each(F&& f) const {
        for (int i = d; i >= 0; i--)
            for (int j = 0; j + i <= d; j++) f(i, j, d - i - j, at(i, j));
    }
};

template <class K>
TernForm<K> operator+(const TernForm<K>& a, const TernForm<K>& b) {
    assert(a.d == b.d);
    TernForm<K> r = a;
    for (size_t i = 0; i < r.c.size(); i++) r.c[i] = r.c[i] + b.c[i];
    return r;
}

template <class K>
TernForm<K> operator*(const TernForm<K>& a, const TernForm<K>& b) {
    TernForm<K> r(a.d + b.d, zero_like(a.c[0]));
    a.for_each([&](int ia, int ja, int, const K& ca) {
        if (is_zero(ca)) return;
        b.for_each([&](int ib, int jb, int, const K& cb) {
            if (is_zero(cb)) return;
            r.at(ia + ib, ja + jb) = r.at(ia + ib, ja + jb) + ca * cb;
        });
    });
    return r;
}

template <class K>
TernForm<K> operator*(const K& s, const TernForm<K>& a) {
    TernForm<K> r = a;
    for (auto& x : r.c) x = s * x;
    return r;
}

template <class K>
bool operator==(const TernForm<K>& a, const TernForm<K>& b) {
    if (a.d != b.d) return false;
    for (size_t i = 0; i < a.c.size(); i++)
        if (!(a.c[i] == b.c[i])) return false;
    return true;
}

// Partial derivative with respect to variable 0 (X), 1 (Y) or 2 (Z).
template <class K>
TernForm<K> partial(const TernForm<K>& f, int var) {
    assert(f.d >= 1);
    TernForm<K> r(f.d - 1, zero_like(f.c[0]));
    f.for_each([&](int i, int j, int k, const K& co) {
        if (is_zero(co)) return;
        int e[3] = {i, j, k};
        if (e[var] == 0) return;
        long long m = e[var];
        e[var]--;
        r.at(e[0], e[1]) = r.at(e[0], e[1]) + mul_int(co, m);
    });
    return r;
}

// (f o M)(v) = f(M v), exact substitution by expanding powers of the rows.
TernForm<Rat> substitute(const TernForm<Rat>& f, const Mat3& M);

// View f as a polynomial in the given variable, with binary-form coefficients
// in the remaining two variables taken in canonical (X,Y,Z) order; entry j is
// the coefficient form of var^j, homogeneous of degree d - j.
template <class K>
std::vector<BinForm<K>> coeffs_in_var(const TernForm<K>& f, int var) {
    int a = var == 0 ? 1 : 0; // first remaining variable indexes the form
    std::vector<std::vector<K>> raw((size_t)f.d + 1);
    for (int j = 0; j <= f.d; j++) raw[(size_t)j].assign((size_t)(f.d - j) + 1, zero_like(f.c[0]));
    f.for_each([&](int i, int j, int k, const K& co) {
        int e[3] = {i, j, k};
        int vj = e[var];
        raw[(size_t)vj][(size_t)e[a]] = raw[(size_t)vj][(size_t)e[a]] + co;
    });
    std::vector<BinForm<K>> out;
    for (int j = 0; j <= f.d; j++) out.push_back(BinForm<K>(f.d - j, std::move(raw[(size_t)j])));
    return out;
}

// Determinant of a small matrix of binary forms, division-free (Laplace over
// column subsets).  Used for eliminant computations on partial derivatives.
template <class K>
BinForm<K> det_form_matrix(const std::vector<std::vector<BinForm<K>>>& m, const K& model) {
    size_t n = m.size();
    if (n == 0) return BinForm<K>(0, {one_like(model)});
    std::vector<BinForm<K>> dp((size_t)1 << n);
    std::vector<bool> dp_set((size_t)1 << n, false);
    dp[0] = BinForm<K>(0, {one_like(model)});
    dp_set[0] = true;

    std::function<const BinForm<K>&(size_t)> minor = [&](size_t mask) -> const BinForm<K>& {
        if (dp_set[mask]) return dp[mask];
        size_t row = (size_t)__builtin_popcountll(mask) - 1;
        BinForm<K> acc; // zero
        int sign = 1;
        for (size_t col = 0; col < n; col++) {
            if (!(mask & ((size_t)1 << col))) continue;
            const BinForm<K>& sub = minor(mask & ~((size_t)1 << col));
            if (!m[row][col].zero() && !sub.zero()) {
                BinForm<K> term = m[row][col] * sub;
                acc = acc.zero() ? (sign > 0 ? term : -term) : (sign > 0 ? acc + term : acc - term);
            }
            sign = -sign;
        }
        dp[mask] = std::move(acc);
        dp_set[mask] = true;
        return dp[mask];
    };
    return minor(((size_t)1 << n) - 1);
}

// Resultant of A and B with respect to one variable, at their actual degrees
// in that variable, as a binary form in the remaining two.  Conventions for
// degenerate degrees: Res(f, g) = f^deg(g) when f does not involve the
// variable, and the unit form when neither does.
template <class K>
BinForm<K> resultant_wrt(const TernForm<K>& A, const TernForm<K>& B, int var, const K& model) {
    if (A.zero() || B.zero()) return BinForm<K>{};
    auto ca = coeffs_in_var(A, var);
    auto cb = coeffs_in_var(B, var);
    int da = -1, db = -1;
    for (int j = (int)ca.size() - 1; j >= 0; j--)
        if (!ca[(size_t)j].zero()) {
            da = j;
            break;
        }
    for (int j = (int)cb.size() - 1; j >= 0; j--)
        if (!cb[(size_t)j].zero()) {
            db = j;
            break;
        }
    if (da == 0 && db == 0) return BinForm<K>(0, {one_like(model)});
    if (da == 0) return pow_form(ca[0], db, model);
    if (db == 0) return pow_form(cb[0], da, model);
    size_t n = (size_t)(da + db);
    std::vector<std::vector<BinForm<K>>> m(n, std::vector<BinForm<K>>(n));
    for (int r = 0; r < db; r++)
        for (int i = 0; i <= da; i++) m[(size_t)r][(size_t)(r + i)] = ca[(size_t)(da - i)];
    for (int r = 0; r < da; r++)
        for (int i = 0; i <= db; i++) m[(size_t)(db + r)][(size_t)(r + i)] = cb[(size_t)(db - i)];
    return det_form_matrix(m, model);
}

// Reduce a rational ternary form mod p (BadPrime if p divides a denominator).
TernForm<Fp> reduce_mod_p(const TernForm<Rat>& f, uint64_t p);

} // namespace qd
