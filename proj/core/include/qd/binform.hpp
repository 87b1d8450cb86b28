#pragma once

#include <cassert>
#include <vector>

#include "qd/poly.hpp"

namespace qd {

// Homogeneous binary form of declared degree d: coeffs[i] multiplies X^i Z^(d-i).
// The declared degree is nominal; leading entries may be zero (e.g. the
// degree-8 homogenization of a degree-7 polynomial).  d = -1 encodes the zero
// form of indeterminate degree, which absorbs additively.
template <class K>
struct BinForm {
    int d = -1;
    std::vector<K> c;

    BinForm() = default;
    BinForm(int degree, std::vector<K> coeffs) : d(degree), c(std::move(coeffs)) {
        assert(d >= 0 && c.size() == (size_t)d + 1);
        bool all = true;
        for (const auto& x : c) all = all && is_zero(x);
        if (all) {
            d = -1;
            c.clear();
        }
    }

    bool zero() const { return d < 0; }

    K eval(const K& x, const K& z) const {
        if (zero()) return zero_like(x);
        K acc = zero_like(x);
        // sum c[i] x^i z^(d-i) by two-sided Horner
        for (int i = d; i >= 0; i--) acc = acc * x + c[(size_t)i] * pow_k(z, d - i);
        return acc;
    }

    Poly<K> dehom() const { return zero() ? Poly<K>{} : Poly<K>(c); }

    // Coefficient of X^i Z^(d-i), with zero-form convention.
    K coeff_or(int i, const K& model) const {
        if (zero() || i < 0 || i > d) return zero_like(model);
        return c[(size_t)i];
    }
};

template <class K>
BinForm<K> binform_from_poly(const Poly<K>& f, int degree) {
    if (f.zero()) return BinForm<K>{};
    assert(f.deg() <= degree);
    std::vector<K> v((size_t)degree + 1, zero_like(f.c[0]));
    for (size_t i = 0; i < f.c.size(); i++) v[i] = f.c[i];
    return BinForm<K>(degree, std::move(v));
}

template <class K>
BinForm<K> operator+(const BinForm<K>& a, const BinForm<K>& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    assert(a.d == b.d && "adding binary forms of different degrees");
    std::vector<K> v = a.c;
    for (size_t i = 0; i < v.size(); i++) v[i] = v[i] + b.c[i];
    return BinForm<K>(a.d, std::move(v));
}

template <class K>
BinForm<K> operator-(const BinForm<K>& a) {
    if (a.zero()) return a;
    std::vector<K> v = a.c;
    for (auto& x : v) x = -x;
    return BinForm<K>(a.d, std::move(v));
}

template <class K>
BinForm<K> operator-(const BinForm<K>& a, const BinForm<K>& b) {
    return a + (-b);
}

template <class K>
BinForm<K> operator*(const BinForm<K>& a, const BinForm<K>& b) {
    if (a.zero() || b.zero()) return BinForm<K>{};
    std::vector<K> v((size_t)(a.d + b.d) + 1, zero_like(a.c[0]));
    for (int i = 0; i <= a.d; i++)
        for (int j = 0; j <= b.d; j++) v[(size_t)(i + j)] = v[(size_t)(i + j)] + a.c[(size_t)i] * b.c[(size_t)j];
    return BinForm<K>(a.d + b.d, std::move(v));
}

template <class K>
BinForm<K> operator*(const K& s, const BinForm<K>& a) {
    if (a.zero() || is_zero(s)) return BinForm<K>{};
    std::vector<K> v = a.c;
    for (auto& x : v) x = s * x;
    return BinForm<K>(a.d, std::move(v));
}

template <class K>
bool operator==(const BinForm<K>& a, const BinForm<K>& b) {
    if (a.d != b.d) return false;
    for (size_t i = 0; i < a.c.size(); i++)
        if (!(a.c[i] == b.c[i])) return false;
    return true;
}

template <class K>
BinForm<K> pow_form(const BinForm<K>& a, int e, const K& model) {
    BinForm<K> r(0, {one_like(model)});
    for (; e > 0; e--) r = r * a;
    return r;
}

// X <-> Z swap, i.e. the form of F(Z, X).
template <class K>
BinForm<K> reverse_form(const BinForm<K>& a) {
    if (a.zero()) return a;
    std::vector<K> v(a.c.rbegin(), a.c.rend());
    return BinForm<K>(a.d, std::move(v));
}

// F(-X, Z).
template <class K>
BinForm<K> flip_x_form(const BinForm<K>& a) {
    if (a.zero()) return a;
    std::vector<K> v = a.c;
    for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
    return BinForm<K>(a.d, std::move(v));
}

// Resultant of two binary forms at their declared degrees: the determinant of
// the (da+db) x (da+db) Sylvester matrix of the coefficient lists.  Vanishes
// exactly when the forms share a projective root (including (1:0), which the
// dehomogenized resultant would miss on degree-deficient forms).
template <class K>
K sylvester_resultant(const std::vector<K>& a, const std::vector<K>& b, const K& model) {
    int da = (int)a.size() - 1, db = (int)b.size() - 1;
    assert(da >= 0 && db >= 0);
    if (da == 0) return pow_k(a[0], db);
    if (db == 0) return pow_k(b[0], da);
    int n = da + db;
    std::vector<std::vector<K>> m((size_t)n, std::vector<K>((size_t)n, zero_like(model)));
    for (int r = 0; r < db; r++)
        for (int i = 0; i <= da; i++) m[(size_t)r][(size_t)(r + i)] = a[(size_t)(da - i)];
    for (int r = 0; r < da; r++)
        for (int i = 0; i <= db; i++) m[(size_t)(db + r)][(size_t)(r + i)] = b[(size_t)(db - i)];
    // Gaussian elimination with exact field arithmetic.
    K det = one_like(model);
    for (int col = 0; col < n; col++) {
        int piv = -1;
        for (int r = col; r < n; r++)
            if (!is_zero(m[(size_t)r][(size_t)col])) {
                piv = r;
                break;
            }
        if (piv < 0) return zero_like(model);
        if (piv != col) {
            std::swap(m[(size_t)piv], m[(size_t)col]);
            det = -det;
        }
        det = det * m[(size_t)col][(size_t)col];
        K ipiv = one_like(model) / m[(size_t)col][(size_t)col];
        for (int r = col + 1; r < n; r++) {
            if (is_zero(m[(size_t)r][(size_t)col])) continue;
            K f = m[(size_t)r][(size_t)col] * ipiv;
            for (int cc = col; cc < n; cc++)
                m[(size_t)r][(size_t)cc] = m[(size_t)r][(size_t)cc] - f * m[(size_t)col][(size_t)cc];
        }
    }
    return det;
}

template <class K>
K resultant_forms(const BinForm<K>& a, const BinForm<K>& b, const K& model) {
    if (a.zero() || b.zero()) return zero_like(model);
    return sylvester_resultant(a.c, b.c, model);
}

} // namespace qd
