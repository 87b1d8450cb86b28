#include "qd/quotient.hpp"

#include <algorithm>

namespace qd {

std::string Involution::kind() const {
    if (hyperelliptic) return "hyperelliptic_flip_x";
    switch (axis) {
        case 0: return "flip_x";
        case 1: return "flip_y";
        case 2: return "flip_z";
    }
    return "?";
}

namespace {

bool invariant_under_flip(const TernForm<Rat>& f, int axis) {
    bool ok = true;
    f.for_each([&](int i, int j, int k, const Rat& co) {
        int e = axis == 0 ? i : axis == 1 ? j : k;
        if ((e & 1) && !is_zero(co)) ok = false;
    });
    return ok;
}

Mat3 flip_matrix(int axis) {
    return Mat3::diag(axis == 0 ? -1 : 1, axis == 1 ? -1 : 1, axis == 2 ? -1 : 1);
}

bool is_scalar_matrix(const Mat3& m) {
    if (!(m.m[0][1] == 0 && m.m[0][2] == 0 && m.m[1][0] == 0 && m.m[1][2] == 0 && m.m[2][0] == 0 &&
          m.m[2][1] == 0))
        return false;
    return m.m[0][0] == m.m[1][1] && m.m[1][1] == m.m[2][2];
}

// Diagonal involutions have two projective representatives; prefer the one
// with a single -1.  Returns the represented flip axis when diagonal.
std::pair<Mat3, int> canonical_involution(const Mat3& sigma_raw, int fallback_axis) {
    Mat3 s = projective_normal(sigma_raw);
    bool diagonal = true;
    for (int i = 0; i < 3 && diagonal; i++)
        for (int j = 0; j < 3; j++)
            if (i != j && !is_zero(s.m[i][j])) diagonal = false;
    if (!diagonal) return {s, fallback_axis};
    int minus = 0, axis = -1;
    for (int i = 0; i < 3; i++)
        if (sgn(s.m[i][i]) < 0) {
            minus++;
            axis = i;
        }
    if (minus == 2) {
        s = projective_normal(-s);
        minus = 1;
        for (int i = 0; i < 3; i++)
            if (sgn(s.m[i][i]) < 0) axis = i;
    }
    return {s, axis};
}

} // namespace

std::vector<Involution> detect_involutions(const PlaneQuartic& C, const std::vector<Mat3>& extra) {
    std::vector<Mat3> candidates = signed_permutations();
    for (const auto& m : extra) {
        if (is_zero(m.det())) fail(errc::parse_error, "singular search transformation");
        candidates.push_back(m);
    }
    std::vector<Involution> found;
    for (int axis : {1, 0, 2}) {
        for (const Mat3& M : candidates) {
            TernForm<Rat> Qm = substitute(C.Q, M);
            if (!invariant_under_flip(Qm, axis)) continue;
            Mat3 sigma = M * flip_matrix(axis) * M.inverse();
            auto [canon, ax] = canonical_involution(sigma, axis);
            if (is_scalar_matrix(canon)) continue; // projectively trivial
            bool dup = false;
            for (const auto& inv : found) dup = dup || inv.sigma == canon;
            if (dup) continue;
            found.push_back(Involution{ax, canon, M, false});
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const Involution& a, const Involution& b) {
        auto pri = [](int axis) { return axis == 1 ? 0 : axis == 0 ? 1 : 2; };
        return pri(a.axis) < pri(b.axis);
    });
    return found;
}

std::vector<Involution> detect_involutions(const HyperellipticG3& C) {
    std::vector<Involution> out;
    bool even = true;
    for (int i = 1; i <= 8; i += 2) even = even && is_zero(C.F.coeff_or(i, Rat(0)));
    if (even) {
        Involution inv;
        inv.axis = 0;
        inv.hyperelliptic = true;
        inv.sigma = Mat3::diag(-1, 1, 1);
        inv.conjugator = Mat3::identity();
        out.push_back(inv);
    }
    return out;
}

CianiData ciani_parameters(const PlaneQuartic& C) {
    CianiData out;
    bool even = true;
    C.Q.for_each([&](int i, int j, int k, const Rat& co) {
        if (((i & 1) || (j & 1) || (k & 1)) && !is_zero(co)) even = false;
    });
    out.ciani = even;
    if (even) {
        out.a1 = C.Q.at(4, 0);
        out.a2 = C.Q.at(0, 4);
        out.a3 = C.Q.at(0, 0);
        out.b1 = C.Q.at(0, 2) / 2; // Y^2 Z^2
        out.b2 = C.Q.at(2, 0) / 2; // X^2 Z^2
        out.b3 = C.Q.at(2, 2) / 2; // X^2 Y^2
    }
    return out;
}

QuotientData build_quotient(const PlaneQuartic& C, const Involution& s) {
    if (s.hyperelliptic) fail(errc::internal, "hyperelliptic involution on a quartic");
    Mat3 P = swap_axes(s.axis, 1);
    Mat3 W = s.conjugator * P;
    TernForm<Rat> Q3 = substitute(C.Q, W);
    if (!invariant_under_flip(Q3, 1)) fail(errc::internal, "involution lost under conjugation");
    Rat alpha = Q3.at(0, 4);
    if (is_zero(alpha))
        fail(errc::quotient_not_genus1, "no Y^4 term in the symmetric model");
    TernForm<Rat> Qn = (1 / alpha) * Q3;
    auto by_y = coeffs_in_var(Qn, 1);
    if (!by_y[1].zero() || !by_y[3].zero()) fail(errc::internal, "odd Y terms survived");
    BinForm<Rat> h = -by_y[2];
    BinForm<Rat> r = binform_from_poly(by_y[0].dehom(), 4);
    BinForm<Rat> hh = h.zero() ? BinForm<Rat>{} : h * h;
    BinForm<Rat> G;
    if (hh.zero())
        G = Rat(-4) * r;
    else
        G = hh - Rat(4) * r;
    QuotientData out;
    out.hyperelliptic = false;
    out.D = validate_genus1(binform_from_poly(G.dehom(), 4));
    out.h = h;
    out.r = r;
    out.to_curve = W;
    out.sigma = s;
    out.psi_formula = "(X : 2*Y^2 - h(X,Z) : Z) composed with the recorded coordinate change";
    return out;
}

QuotientData build_quotient(const HyperellipticG3& C, const Involution& s) {
    if (!s.hyperelliptic) fail(errc::internal, "quartic involution on a hyperelliptic model");
    for (int i = 1; i <= 8; i += 2)
        if (!is_zero(C.F.coeff_or(i, Rat(0)))) fail(errc::internal, "model is not even in x");
    std::vector<Rat> g(5, Rat(0));
    for (int i = 0; i <= 4; i++) g[(size_t)i] = C.F.coeff_or(2 * i, Rat(0));
    QuotientData out;
    out.hyperelliptic = true;
    out.D = validate_genus1(BinForm<Rat>(4, std::move(g)));
    out.to_curve = Mat3::identity();
    out.sigma = s;
    out.psi_formula = "(x : y : z) -> (x^2 : y : z^2)";
    return out;
}

CurvePoint quotient_map_point(const QuotientData& q, const CurvePoint& p) {
    if (q.hyperelliptic) {
        CurvePoint img = normalize_point(p.x * p.x, p.y, p.z * p.z, 2);
        if (!q.D.on_curve(img)) fail(errc::point_not_on_curve, "psi image off the quotient");
        return img;
    }
    auto v = q.to_curve.inverse().apply({p.x, p.y, p.z});
    Rat hval = q.h.zero() ? Rat(0) : q.h.eval(v[0], v[2]);
    Rat w = 2 * v[1] * v[1] - hval;
    CurvePoint img = normalize_point(v[0], w, v[2], 2);
    if (!q.D.on_curve(img)) fail(errc::point_not_on_curve, "psi image off the quotient");
    return img;
}

// --- rational points on the quotient -----------------------------------------

namespace {

enum class Tri { yes, no, unknown };

int val_p(const Int& n, uint64_t p) {
    if (n == 0) return 1 << 20;
    Int m = n;
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= (unsigned long)p;
        v++;
    }
    return v;
}

std::vector<Int> shift_scale(const std::vector<Int>& c, const Int& s0, uint64_t p) {
    // V(s0 + p t) as integer coefficients in t
    size_t n = c.size();
    std::vector<Int> shifted(n, Int(0));
    // Horner: V(x) = ((c_k x + c_{k-1}) x + ...) evaluated symbolically at x = s0 + u
    std::vector<Int> acc;
    for (size_t i = n; i-- > 0;) {
        // acc = acc * (s0 + u) + c[i]
        std::vector<Int> next(acc.size() + 1, Int(0));
        for (size_t j = 0; j < acc.size(); j++) {
            next[j] += acc[j] * s0;
            next[j + 1] += acc[j];
        }
        if (next.empty()) next.assign(1, Int(0));
        next[0] += c[i];
        acc = std::move(next);
    }
    Int pk = 1;
    for (size_t j = 0; j < acc.size(); j++) {
        acc[j] *= pk;
        pk *= (unsigned long)p;
    }
    return acc;
}

Int eval_int(const std::vector<Int>& c, const Int& x) {
    Int acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

Tri zp_square_value(std::vector<Int> v, uint64_t p, int depth) {
    bool all_zero = true;
    for (const auto& x : v) all_zero = all_zero && x == 0;
    if (all_zero) return Tri::yes; // y = 0 everywhere on the disc
    int e = 1 << 20;
    for (const auto& x : v)
        if (x != 0) e = std::min(e, val_p(x, p));
    Int pe = 1;
    for (int i = 0; i < e - (e & 1); i++) pe *= (unsigned long)p;
    if (pe > 1)
        for (auto& x : v) x /= pe;
    e &= 1;
    if (depth == 0) return Tri::unknown;
    std::vector<Int> h = v;
    if (e) {
        for (auto& x : h) x /= (unsigned long)p;
    }
    bool any_unknown = false;
    if (p > 2) {
        for (uint64_t s0 = 0; s0 < p; s0++) {
            uint64_t u = mod_p(eval_int(h, Int((unsigned long)s0)), p);
            if (u != 0) {
                if (e == 0 && legendre(u, p) == 1) return Tri::yes;
                continue; // the whole sub-disc has p-free value of fixed class
            }
            Tri r = zp_square_value(shift_scale(v, Int((unsigned long)s0), p), p, depth - 1);
            if (r == Tri::yes) return Tri::yes;
            if (r == Tri::unknown) any_unknown = true;
        }
        return any_unknown ? Tri::unknown : Tri::no;
    }
    // p == 2: unit squares are exactly 1 mod 8
    if (e == 1) {
        for (uint64_t s0 = 0; s0 < 2; s0++) {
            Int hv = eval_int(h, Int((unsigned long)s0));
            if (mpz_odd_p(hv.get_mpz_t())) continue; // odd 2-valuation on the sub-disc
            Tri r = zp_square_value(shift_scale(v, Int((unsigned long)s0), 2), 2, depth - 1);
            if (r == Tri::yes) return Tri::yes;
            if (r == Tri::unknown) any_unknown = true;
        }
        return any_unknown ? Tri::unknown : Tri::no;
    }
    for (uint64_t s0 = 0; s0 < 8; s0++) {
        Int hv = eval_int(h, Int((unsigned long)s0));
        uint64_t u = mod_p(hv, 8);
        if (u == 1) return Tri::yes;
        if (u % 2 == 1) continue;
        std::vector<Int> sub = h;
        // restrict to s = s0 + 8 t
        {
            std::vector<Int> tmp = shift_scale(h, Int((unsigned long)s0), 2); // s0 + 2t
            // want s0 + 8t: apply t -> 4t twice more (scale arg by 2 twice)
            for (int rep = 0; rep < 2; rep++) {
                Int pk = 1;
                for (size_t j = 0; j < tmp.size(); j++) {
                    tmp[j] *= pk;
                    pk *= 2;
                }
            }
            sub = std::move(tmp);
        }
        Tri r = zp_square_value(sub, 2, depth - 1);
        if (r == Tri::yes) return Tri::yes;
        if (r == Tri::unknown) any_unknown = true;
    }
    return any_unknown ? Tri::unknown : Tri::no;
}

std::vector<Int> integer_coeffs(const Poly<Rat>& g, int pad_to) {
    std::vector<Int> out((size_t)pad_to + 1, Int(0));
    for (size_t i = 0; i < g.c.size(); i++) {
        if (g.c[i].get_den() != 1) fail(errc::internal, "expected integer coefficients");
        out[i] = g.c[i].get_num();
    }
    return out;
}

} // namespace

bool qp_solvable(const Poly<Rat>& g_integer, uint64_t p) {
    const int depth = 48;
    std::vector<Int> v = integer_coeffs(g_integer, 4);
    if (zp_square_value(v, p, depth) != Tri::no) return true;
    std::vector<Int> rev(v.rbegin(), v.rend());
    Int pk = 1;
    for (size_t j = 0; j < rev.size(); j++) {
        rev[j] *= pk;
        pk *= (unsigned long)p;
    }
    return zp_square_value(rev, p, depth) != Tri::no;
}

G1PointSearch find_point_genus1(const Genus1Quartic& D, long height_bound) {
    G1PointSearch out;
    out.height_bound = height_bound;
    auto inf = D.points_at_infinity();
    if (!inf.empty()) {
        out.outcome = G1Outcome::point_found;
        out.point = inf.front();
        return out;
    }
    auto hits = search_y2_solutions(D.g(), height_bound, true);
    if (!hits.empty()) {
        out.outcome = G1Outcome::point_found;
        out.point = normalize_point(hits[0].x, hits[0].y, Rat(1), 2);
        return out;
    }

    Poly<Rat> g = D.g();
    // real solvability
    bool real_ok = (g.deg() & 1) || sgn(g.lc()) > 0 || sturm_real_roots(g) > 0;
    if (!real_ok) {
        out.outcome = G1Outcome::locally_unsolvable;
        out.witness = "R";
        return out;
    }
    Poly<Rat> gi = primitive_integer(g);
    std::vector<uint64_t> ps;
    for (uint64_t p : primes_up_to(100))
        if (p > 2) ps.push_back(p);
    auto add_factors = [&](const Int& n) {
        if (n == 0) return;
        for (const auto& [q, e] : factor(n)) {
            (void)e;
            if (q > 2 && q.fits_ulong_p() && q.get_ui() > 100) ps.push_back(q.get_ui());
        }
    };
    add_factors(num(discriminant(gi)));
    add_factors(gi.lc().get_num());
    add_factors(gi.c[0].get_num());
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    ps.push_back(2); // checked last
    for (uint64_t p : ps) {
        if (!qp_solvable(gi, p)) {
            out.outcome = G1Outcome::locally_unsolvable;
            out.witness = std::to_string(p);
            return out;
        }
    }
    out.outcome = G1Outcome::undetermined;
    return out;
}

// --- maps to Weierstrass form -------------------------------------------------

namespace {

Poly<Rat> reverse4(const Poly<Rat>& g) { return reverse_poly(g, 4); }

Poly<Rat> cubic_of_stage(const StQuarticToCubic& st) {
    Rat c3 = -8 * st.q;
    Rat c2 = 4 * st.c;
    Rat c1 = 8 * st.a * st.q - 2 * st.b * st.d / st.q;
    Rat c0 = st.b * st.b - 4 * st.a * st.c + st.a * st.d * st.d / (st.q * st.q);
    return Poly<Rat>(std::vector<Rat>{c0, c1, c2, c3});
}

} // namespace

std::optional<EPointA> MapChain::fwd(const CurvePoint& p) const {
    CurvePoint cur = p;
    for (const auto& st : stages) {
        if (std::holds_alternative<StTranslate>(st)) {
            if (!cur.infinite()) cur = CurvePoint{cur.x - std::get<StTranslate>(st).x0, cur.y, Rat(1), 2};
        } else if (std::holds_alternative<StReverse>(st)) {
            cur = normalize_point(cur.z, cur.y, cur.x, 2);
        } else if (std::holds_alternative<StQuarticToCubic>(st)) {
            const auto& s = std::get<StQuarticToCubic>(st);
            if (cur.infinite() || is_zero(cur.x)) return std::nullopt;
            Rat u = cur.x, v = cur.y;
            Rat tau = (v - s.q - (s.d / (2 * s.q)) * u) / (u * u);
            Rat zeta = 2 * (s.a - tau * tau) * u + (s.b - (s.d / s.q) * tau);
            cur = CurvePoint{tau, zeta, Rat(1), 2};
        } else {
            const auto& s = std::get<StCubicScale>(st);
            if (cur.infinite()) return EPointA{Rat(0), Rat(0), true};
            return EPointA{s.c3 * cur.x, s.c3 * cur.y, false};
        }
    }
    fail(errc::internal, "map chain without final scaling stage");
}

std::optional<CurvePoint> MapChain::bwd(const EPointA& e) const {
    CurvePoint cur{Rat(0), Rat(0), Rat(1), 2};
    bool at_inf = e.inf;
    bool started = false;
    for (size_t i = stages.size(); i-- > 0;) {
        const auto& st = stages[i];
        if (std::holds_alternative<StCubicScale>(st)) {
            const auto& s = std::get<StCubicScale>(st);
            if (at_inf)
                cur = CurvePoint{Rat(1), Rat(0), Rat(0), 2};
            else
                cur = CurvePoint{e.x / s.c3, e.y / s.c3, Rat(1), 2};
            started = true;
        } else if (std::holds_alternative<StQuarticToCubic>(st)) {
            const auto& s = std::get<StQuarticToCubic>(st);
            if (cur.infinite()) return std::nullopt;
            Rat tau = cur.x, zeta = cur.y;
            Rat a2 = s.a - tau * tau;
            Rat b1 = s.b - (s.d / s.q) * tau;
            Rat u;
            if (!is_zero(a2)) {
                u = (zeta - b1) / (2 * a2);
            } else if (!is_zero(b1) && zeta == b1) {
                Rat c0 = s.c - (s.d * s.d) / (4 * s.q * s.q) - 2 * s.q * tau;
                u = -c0 / b1;
            } else {
                return std::nullopt;
            }
            Rat v = s.q + (s.d / (2 * s.q)) * u + tau * u * u;
            cur = CurvePoint{u, v, Rat(1), 2};
        } else if (std::holds_alternative<StReverse>(st)) {
            cur = normalize_point(cur.z, cur.y, cur.x, 2);
        } else {
            const auto& s = std::get<StTranslate>(st);
            if (!cur.infinite()) cur = CurvePoint{cur.x + s.x0, cur.y, Rat(1), 2};
        }
    }
    if (!started) fail(errc::internal, "map chain without final scaling stage");
    return cur;
}

std::string MapChain::describe() const {
    std::string out;
    for (const auto& st : stages) {
        if (!out.empty()) out += "; ";
        if (std::holds_alternative<StTranslate>(st))
            out += "x -> x - (" + rat_str(std::get<StTranslate>(st).x0) + ")";
        else if (std::holds_alternative<StReverse>(st))
            out += "(x : y : z) -> (z : y : x)";
        else if (std::holds_alternative<StQuarticToCubic>(st)) {
            const auto& s = std::get<StQuarticToCubic>(st);
            out += "t = (y - q - d/(2q) x)/x^2, z = 2(a - t^2)x + b - (d/q)t with q=" + rat_str(s.q);
        } else
            out += "(t, z) -> (c3 t, c3 z) with c3=" + rat_str(std::get<StCubicScale>(st).c3);
    }
    return out;
}

WeierstrassData quartic_to_weierstrass(const Genus1Quartic& D, const CurvePoint& P0) {
    if (!D.on_curve(P0)) fail(errc::point_not_on_curve, "P0 not on the genus-1 model");
    WeierstrassData out;
    Poly<Rat> cur = D.g();
    std::vector<MapStage>& stages = out.chain.stages;

    if (cur.deg() == 4) {
        Rat y0;
        if (P0.infinite()) {
            stages.push_back(StReverse{});
            cur = reverse4(cur);
            y0 = P0.y;
        } else {
            if (!is_zero(P0.x)) {
                stages.push_back(StTranslate{P0.x});
                cur = shift_arg(cur, P0.x);
            }
            y0 = P0.y;
        }
        if (!is_zero(y0)) {
            StQuarticToCubic st;
            st.q = y0;
            st.a = cur.coeff(4, Rat(0));
            st.b = cur.coeff(3, Rat(0));
            st.c = cur.coeff(2, Rat(0));
            st.d = cur.coeff(1, Rat(0));
            stages.push_back(st);
            cur = cubic_of_stage(st);
        } else {
            stages.push_back(StReverse{});
            cur = reverse4(cur);
        }
    }
    if (cur.deg() != 3) fail(errc::internal, "transformation did not reach a cubic");
    Rat c3 = cur.coeff(3, Rat(0)), c2 = cur.coeff(2, Rat(0)), c1 = cur.coeff(1, Rat(0)), c0 = cur.coeff(0, Rat(0));
    stages.push_back(StCubicScale{c3});
    out.E = make_weierstrass(Rat(0), c2, Rat(0), c1 * c3, c0 * c3 * c3);

    // rational candidates where the forward map is undefined
    for (const auto& ip : D.points_at_infinity()) out.exceptional_D.push_back(ip);
    for (size_t i = 0; i < stages.size(); i++) {
        if (!std::holds_alternative<StQuarticToCubic>(stages[i])) continue;
        const auto& s = std::get<StQuarticToCubic>(stages[i]);
        for (const Rat& sign : {Rat(1), Rat(-1)}) {
            CurvePoint p{Rat(0), sign * s.q, Rat(1), 2};
            // pull back through the earlier stages
            for (size_t j = i; j-- > 0;) {
                if (std::holds_alternative<StReverse>(stages[j]))
                    p = normalize_point(p.z, p.y, p.x, 2);
                else if (std::holds_alternative<StTranslate>(stages[j])) {
                    if (!p.infinite()) p = CurvePoint{p.x + std::get<StTranslate>(stages[j]).x0, p.y, Rat(1), 2};
                }
            }
            if (D.on_curve(p)) out.exceptional_D.push_back(p);
        }
        // E-side: backward map degenerates where a = tau^2
        if (auto sq = rat_sqrt(s.a)) {
            for (const Rat& tau : {*sq, -*sq}) {
                Rat X = c3 * tau;
                Rat rhs = X * X * X + out.E.a2 * X * X + out.E.a4 * X + out.E.a6;
                if (auto Y = rat_sqrt(rhs)) {
                    for (const Rat& yy : {*Y, -*Y}) {
                        EPointA ep{X, yy, false};
                        if (!out.chain.bwd(ep)) out.exceptional_E.push_back(ep);
                    }
                }
            }
        }
    }
    sort_dedupe(out.exceptional_D);
    return out;
}

WeierstrassCurve jacobian_by_invariants(const Genus1Quartic& D) {
    Poly<Rat> g = D.g();
    Rat a = g.coeff(4, Rat(0)), b = g.coeff(3, Rat(0)), c = g.coeff(2, Rat(0)), d = g.coeff(1, Rat(0)),
        e = g.coeff(0, Rat(0));
    Rat I = 12 * a * e - 3 * b * d + c * c;
    Rat J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c * c * c;
    return make_weierstrass(Rat(0), Rat(0), Rat(0), -27 * I, -27 * J);
}

// --- mod-p chain evaluation ----------------------------------------------------

namespace {

std::optional<WPointFp> normalize_wp(const Fp& x, const Fp& y, const Fp& z) {
    if (!is_zero(z)) {
        Fp l = inv(z);
        return WPointFp{x * l, y * l * l, one_like(z)};
    }
    if (!is_zero(x)) {
        Fp l = inv(x);
        return WPointFp{one_like(x), y * l * l, zero_like(x)};
    }
    return std::nullopt;
}

} // namespace

std::optional<EPointFp> chain_fwd_fp(const MapChain& chain, const WPointFp& p, uint64_t prime) {
    WPointFp cur = p;
    auto cv = [&](const Rat& r) { return mod_p(r, prime); };
    for (const auto& st : chain.stages) {
        if (std::holds_alternative<StTranslate>(st)) {
            if (!is_zero(cur.z)) cur.x = cur.x - cv(std::get<StTranslate>(st).x0);
        } else if (std::holds_alternative<StReverse>(st)) {
            auto n = normalize_wp(cur.z, cur.y, cur.x);
            if (!n) return std::nullopt;
            cur = *n;
        } else if (std::holds_alternative<StQuarticToCubic>(st)) {
            const auto& s = std::get<StQuarticToCubic>(st);
            if (is_zero(cur.z) || is_zero(cur.x)) return std::nullopt;
            Fp q = cv(s.q), a = cv(s.a), b = cv(s.b), d = cv(s.d);
            if (is_zero(q)) return std::nullopt;
            Fp u = cur.x, v = cur.y;
            Fp tau = (v - q - d / (q + q) * u) / (u * u);
            Fp zeta = (a - tau * tau) * u * fp(2, prime) + (b - d / q * tau);
            cur = WPointFp{tau, zeta, one_like(q)};
        } else {
            const auto& s = std::get<StCubicScale>(st);
            if (is_zero(cur.z)) return EPointFp{zero_like(cur.x), zero_like(cur.x), true};
            Fp c3 = cv(s.c3);
            return EPointFp{c3 * cur.x, c3 * cur.y, false};
        }
    }
    return std::nullopt;
}

std::optional<WPointFp> chain_bwd_fp(const MapChain& chain, const EPointFp& e, uint64_t prime) {
    auto cv = [&](const Rat& r) { return mod_p(r, prime); };
    WPointFp cur{fp(0, prime), fp(0, prime), fp(1, prime)};
    bool at_inf = e.inf;
    for (size_t i = chain.stages.size(); i-- > 0;) {
        const auto& st = chain.stages[i];
        if (std::holds_alternative<StCubicScale>(st)) {
            Fp c3 = cv(std::get<StCubicScale>(st).c3);
            if (is_zero(c3)) return std::nullopt;
            if (at_inf)
                cur = WPointFp{fp(1, prime), fp(0, prime), fp(0, prime)};
            else
                cur = WPointFp{e.x / c3, e.y / c3, fp(1, prime)};
        } else if (std::holds_alternative<StQuarticToCubic>(st)) {
            const auto& s = std::get<StQuarticToCubic>(st);
            if (is_zero(cur.z)) return std::nullopt;
            Fp q = cv(s.q), a = cv(s.a), b = cv(s.b), c = cv(s.c), d = cv(s.d);
            if (is_zero(q)) return std::nullopt;
            Fp tau = cur.x, zeta = cur.y;
            Fp a2 = a - tau * tau;
            Fp b1 = b - d / q * tau;
            Fp u{0, prime};
            if (!is_zero(a2)) {
                u = (zeta - b1) / (a2 + a2);
            } else if (!is_zero(b1) && zeta == b1) {
                Fp c0 = c - d * d / ((q * q) * fp(4, prime)) - (q + q) * tau;
                u = -c0 / b1;
            } else {
                return std::nullopt;
            }
            Fp v = q + d / (q + q) * u + tau * u * u;
            cur = WPointFp{u, v, fp(1, prime)};
        } else if (std::holds_alternative<StReverse>(st)) {
            auto n = normalize_wp(cur.z, cur.y, cur.x);
            if (!n) return std::nullopt;
            cur = *n;
        } else {
            if (!is_zero(cur.z)) cur.x = cur.x + cv(std::get<StTranslate>(st).x0);
        }
    }
    return cur;
}

} // namespace qd
