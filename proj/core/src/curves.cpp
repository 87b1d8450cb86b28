#include "qd/curves.hpp"

#include <algorithm>

namespace qd {

CurvePoint normalize_point(const Rat& x, const Rat& y, const Rat& z, int wy) {
    if (!is_zero(z)) {
        Rat l = 1 / z;
        return CurvePoint{x * l, y * pow_k(l, wy), Rat(1), wy};
    }
    if (!is_zero(x)) {
        Rat l = 1 / x;
        return CurvePoint{Rat(1), y * pow_k(l, wy), Rat(0), wy};
    }
    fail(errc::internal, "point with x = z = 0 has no normal form");
}

bool operator==(const CurvePoint& a, const CurvePoint& b) {
    return a.wy == b.wy && a.x == b.x && a.y == b.y && a.z == b.z;
}

bool point_less(const CurvePoint& a, const CurvePoint& b) {
    if (a.z != b.z) return a.z < b.z;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

void sort_dedupe(std::vector<CurvePoint>& pts) {
    std::sort(pts.begin(), pts.end(), point_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

Int point_height(const CurvePoint& p) {
    if (p.infinite()) return 1;
    return rat_height(p.x);
}

// ---------------------------------------------------------------------------

bool HyperellipticG3::on_curve(const CurvePoint& p) const {
    return p.y * p.y == F.eval(p.x, p.z);
}

HyperellipticG3 validate_hyperelliptic(const BinForm<Rat>& F) {
    if (F.d != 8) fail(errc::wrong_degree, "model form must have degree 8");
    Poly<Rat> f = F.dehom();
    if (f.deg() < 7) fail(errc::wrong_degree, "dehomogenization has degree " + std::to_string(f.deg()) + ", need 7 or 8");
    if (!is_squarefree(f)) fail(errc::not_smooth, "repeated roots in y^2 = f(x)");
    return HyperellipticG3{F};
}

bool PlaneQuartic::on_curve(const CurvePoint& p) const {
    return is_zero(Q.eval(p.x, p.y, p.z));
}

std::array<Rat, 15> PlaneQuartic::coeffs15() const {
    static const int mono[15][2] = {{4, 0}, {3, 1}, {3, 0}, {2, 2}, {2, 1}, {2, 0}, {1, 3}, {1, 2},
                                    {1, 1}, {1, 0}, {0, 4}, {0, 3}, {0, 2}, {0, 1}, {0, 0}};
    std::array<Rat, 15> out;
    for (int t = 0; t < 15; t++) out[(size_t)t] = Q.at(mono[t][0], mono[t][1]);
    return out;
}

TernForm<Rat> quartic_from_coeffs15(const std::array<Rat, 15>& coeffs) {
    static const int mono[15][2] = {{4, 0}, {3, 1}, {3, 0}, {2, 2}, {2, 1}, {2, 0}, {1, 3}, {1, 2},
                                    {1, 1}, {1, 0}, {0, 4}, {0, 3}, {0, 2}, {0, 1}, {0, 0}};
    TernForm<Rat> Q(4, Rat(0));
    for (int t = 0; t < 15; t++) Q.at(mono[t][0], mono[t][1]) = coeffs[(size_t)t];
    return Q;
}

template <class K>
SmoothVerdict quartic_smooth_certificate(const TernForm<K>& Q, const K& model) {
    if (Q.zero()) return SmoothVerdict::singular;
    TernForm<K> P[3] = {partial(Q, 0), partial(Q, 1), partial(Q, 2)};

    // coordinate points first: they are invisible to one ordering each
    const K one = one_like(model);
    const K zero = zero_like(model);
    for (int v = 0; v < 3; v++) {
        K x = v == 0 ? one : zero, y = v == 1 ? one : zero, z = v == 2 ? one : zero;
        bool on = is_zero(Q.eval(x, y, z));
        bool sing = on;
        for (int t = 0; t < 3 && sing; t++) sing = is_zero(P[t].eval(x, y, z));
        if (sing) return SmoothVerdict::singular;
    }

    for (int v : {1, 0, 2}) { // elimination variable order Y, X, Z
        int a = v == 0 ? 1 : 0; // first remaining variable
        int b = v == 2 ? 1 : 2; // second remaining variable
        BinForm<K> r1 = resultant_wrt(P[a], P[v], v, model);
        BinForm<K> r2 = resultant_wrt(P[a], P[b], v, model);
        if (r1.zero() || r2.zero()) continue;
        K cert = resultant_forms(r1, r2, model);
        if (!is_zero(cert)) return SmoothVerdict::smooth;
    }
    return SmoothVerdict::undecided;
}

template SmoothVerdict quartic_smooth_certificate<Rat>(const TernForm<Rat>&, const Rat&);
template SmoothVerdict quartic_smooth_certificate<Fp>(const TernForm<Fp>&, const Fp&);

PlaneQuartic validate_quartic(const TernForm<Rat>& Q) {
    if (Q.zero()) fail(errc::zero_form, "zero quartic form");
    SmoothVerdict v = quartic_smooth_certificate(Q, Rat(0));
    if (v != SmoothVerdict::smooth) fail(errc::not_smooth, "smoothness certificate failed");
    return PlaneQuartic{Q};
}

PlaneQuartic validate_quartic(const std::array<Rat, 15>& coeffs) {
    return validate_quartic(quartic_from_coeffs15(coeffs));
}

bool Genus1Quartic::on_curve(const CurvePoint& p) const {
    return p.y * p.y == G.eval(p.x, p.z);
}

std::vector<CurvePoint> Genus1Quartic::points_at_infinity() const {
    std::vector<CurvePoint> out;
    Rat lcx = G.coeff_or(4, Rat(0));
    if (is_zero(lcx)) {
        out.push_back(CurvePoint{Rat(1), Rat(0), Rat(0), 2});
    } else if (auto s = rat_sqrt(lcx)) {
        out.push_back(CurvePoint{Rat(1), *s, Rat(0), 2});
        out.push_back(CurvePoint{Rat(1), -*s, Rat(0), 2});
    }
    return out;
}

Genus1Quartic validate_genus1(const BinForm<Rat>& G) {
    if (G.d != 4) fail(errc::quotient_not_genus1, "genus-1 model form must have degree 4");
    Poly<Rat> g = G.dehom();
    if (g.deg() < 3) fail(errc::quotient_not_genus1, "dehomogenization has degree " + std::to_string(g.deg()));
    if (!is_squarefree(g)) fail(errc::quotient_not_genus1, "y^2 = g(x) with repeated roots");
    return Genus1Quartic{G};
}

Rat WeierstrassCurve::disc() const {
    Rat B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

Rat WeierstrassCurve::eval(const Rat& x, const Rat& y) const {
    return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6;
}

WeierstrassCurve make_weierstrass(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& a4, const Rat& a6) {
    WeierstrassCurve e{a1, a2, a3, a4, a6};
    if (is_zero(e.disc())) fail(errc::not_smooth, "singular Weierstrass equation");
    return e;
}

// --- counting ----------------------------------------------------------------

long count_points_fp(const PlaneQuartic& C, uint64_t p) {
    TernForm<Fp> Q = reduce_mod_p(C.Q, p);
    long n = 0;
    // chart z = 1: for each x, collect the coefficients of powers of y
    for (uint64_t x = 0; x < p; x++) {
        uint64_t yc[5] = {0, 0, 0, 0, 0};
        Q.for_each([&](int i, int j, int, const Fp& co) {
            if (co.v == 0) return;
            yc[j] = (yc[j] + co.v * pow_mod(x, (uint64_t)i, p)) % p;
        });
        for (uint64_t y = 0; y < p; y++) {
            uint64_t acc = 0;
            for (int j = 4; j >= 0; j--) acc = (acc * y + yc[j]) % p;
            if (acc == 0) n++;
        }
    }
    // chart (x : 1 : 0)
    for (uint64_t x = 0; x < p; x++) {
        uint64_t acc = 0;
        Q.for_each([&](int i, int j, int k, const Fp& co) {
            if (co.v == 0 || k != 0) return;
            (void)j;
            acc = (acc + co.v * pow_mod(x, (uint64_t)i, p)) % p;
        });
        if (acc == 0) n++;
    }
    // (1 : 0 : 0)
    if (Q.at(4, 0).v == 0) n++;
    return n;
}

long count_hyperelliptic_model(const BinForm<Rat>& F, uint64_t p) {
    if (p == 2) fail(errc::bad_prime, "p = 2 on a y^2 model");
    Poly<Fp> f = [&] {
        std::vector<Fp> v;
        for (int i = 0; i <= F.d; i++) v.push_back(mod_p(F.coeff_or(i, Rat(0)), p));
        return Poly<Fp>(std::move(v));
    }();
    long n = 0;
    for (uint64_t x = 0; x < p; x++) {
        Fp val = f.eval(Fp{x, p});
        n += 1 + legendre(val.v, p);
    }
    // infinity: y^2 = (leading coefficient of the full-degree form)
    Fp lc = mod_p(F.coeff_or(F.d, Rat(0)), p);
    n += lc.v == 0 ? 1 : 1 + legendre(lc.v, p);
    return n;
}

long count_points_fp(const HyperellipticG3& C, uint64_t p) { return count_hyperelliptic_model(C.F, p); }
long count_points_fp(const Genus1Quartic& C, uint64_t p) { return count_hyperelliptic_model(C.G, p); }

long count_points_fp(const WeierstrassCurve& E, uint64_t p) {
    if (p == 2) fail(errc::bad_prime, "p = 2 on a y^2 model");
    Fp a1 = mod_p(E.a1, p), a2 = mod_p(E.a2, p), a3 = mod_p(E.a3, p), a4 = mod_p(E.a4, p), a6 = mod_p(E.a6, p);
    long n = 1; // infinity
    for (uint64_t x = 0; x < p; x++) {
        Fp xf{x, p};
        Fp rhs = ((xf + a2) * xf + a4) * xf + a6;
        Fp l = a1 * xf + a3;
        Fp d = l * l + mul_int(rhs, 4);
        n += 1 + legendre(d.v, p);
    }
    return n;
}

// --- good reduction -----------------------------------------------------------

namespace {

bool denominators_clear(const std::vector<Rat>& cs, uint64_t p) {
    for (const auto& q : cs)
        if (mod_p(q.get_den(), p) == 0) return false;
    return true;
}

bool y2_model_good(const Poly<Rat>& f, uint64_t p) {
    if (p == 2) return false;
    for (const auto& q : f.c)
        if (mod_p(q.get_den(), p) == 0) return false;
    Rat d = discriminant(f);
    if (is_zero(d)) return false;
    if (mod_p(d.get_den(), p) == 0) return false;
    return mod_p(d.get_num(), p) != 0;
}

} // namespace

bool good_reduction(const HyperellipticG3& C, uint64_t p) { return y2_model_good(C.f(), p); }
bool good_reduction(const Genus1Quartic& C, uint64_t p) { return y2_model_good(C.g(), p); }

bool good_reduction(const WeierstrassCurve& E, uint64_t p) {
    if (p == 2) return false;
    if (!denominators_clear({E.a1, E.a2, E.a3, E.a4, E.a6}, p)) return false;
    Rat d = E.disc();
    if (mod_p(d.get_den(), p) == 0) return false;
    return mod_p(d.get_num(), p) != 0;
}

bool good_reduction(const PlaneQuartic& C, uint64_t p) {
    for (const auto& q : C.Q.c)
        if (mod_p(q.get_den(), p) == 0) return false;
    TernForm<Fp> Qp = reduce_mod_p(C.Q, p);
    return quartic_smooth_certificate(Qp, Fp{0, p}) == SmoothVerdict::smooth;
}

bool hasse_check(const WeierstrassCurve& E, uint64_t p) {
    long n = count_points_fp(E, p);
    long d = n - (long)p - 1;
    return (unsigned long)(d * d) <= 4 * p;
}

} // namespace qd
