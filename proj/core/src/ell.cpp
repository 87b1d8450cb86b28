#include "qd/ell.hpp"

#include <algorithm>
#include <map>

namespace qd {

std::string ECPoint::str() const {
    if (inf) return "infinity";
    return "(" + rat_str(x) + ", " + rat_str(y) + ")";
}

bool operator==(const ECPoint& a, const ECPoint& b) {
    if (a.inf != b.inf) return false;
    return a.inf || (a.x == b.x && a.y == b.y);
}

bool ecpoint_less(const ECPoint& a, const ECPoint& b) {
    if (a.inf != b.inf) return a.inf;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

ECPoint ec_neg(const WeierstrassCurve& E, const ECPoint& p) {
    if (p.inf) return p;
    return ECPoint::affine(p.x, -p.y - E.a1 * p.x - E.a3);
}

ECPoint ec_add(const WeierstrassCurve& E, const ECPoint& p, const ECPoint& q) {
    if (p.inf) return q;
    if (q.inf) return p;
    if (!E.on_curve(p.x, p.y) || !E.on_curve(q.x, q.y))
        fail(errc::mixed_curves, "group law applied to a point off the curve");
    Rat lambda, nu;
    if (p.x == q.x) {
        if (q.y == -p.y - E.a1 * p.x - E.a3) return ECPoint::infinity();
        Rat denom = 2 * p.y + E.a1 * p.x + E.a3;
        lambda = (3 * p.x * p.x + 2 * E.a2 * p.x + E.a4 - E.a1 * p.y) / denom;
        nu = (-p.x * p.x * p.x + E.a4 * p.x + 2 * E.a6 - E.a3 * p.y) / denom;
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
        nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
    }
    Rat x3 = lambda * lambda + E.a1 * lambda - E.a2 - p.x - q.x;
    Rat y3 = -(lambda + E.a1) * x3 - nu - E.a3;
    return ECPoint::affine(x3, y3);
}

ECPoint ec_mul(const WeierstrassCurve& E, long n, const ECPoint& p) {
    if (n < 0) return ec_mul(E, -n, ec_neg(E, p));
    ECPoint acc = ECPoint::infinity();
    ECPoint base = p;
    while (n) {
        if (n & 1) acc = ec_add(E, acc, base);
        base = ec_add(E, base, base);
        n >>= 1;
    }
    return acc;
}

// --- integral model -----------------------------------------------------------

IntegralModel integralize(const WeierstrassCurve& E) {
    std::map<Int, int> need; // prime -> exponent of u
    const std::pair<Rat, int> coeffs[] = {{E.a1, 1}, {E.a2, 2}, {E.a3, 3}, {E.a4, 4}, {E.a6, 6}};
    for (const auto& [a, w] : coeffs) {
        Int d = a.get_den();
        if (d == 1) continue;
        for (const auto& [q, e] : factor(d)) {
            int u_exp = (e + w - 1) / w; // ceil(e / w)
            auto it = need.find(q);
            if (it == need.end() || it->second < u_exp) need[q] = u_exp;
        }
    }
    Int u = 1;
    for (const auto& [q, e] : need)
        for (int i = 0; i < e; i++) u *= q;
    Rat ur(u);
    IntegralModel out;
    out.u = u;
    out.E = WeierstrassCurve{E.a1 * ur, E.a2 * ur * ur, E.a3 * ur * ur * ur, E.a4 * ur * ur * ur * ur,
                             E.a6 * ur * ur * ur * ur * ur * ur};
    return out;
}

ECPoint IntegralModel::to_integral(const ECPoint& p) const {
    if (p.inf) return p;
    Rat u2(u * u), u3(u * u * u);
    return ECPoint::affine(p.x * u2, p.y * u3);
}

ECPoint IntegralModel::from_integral(const ECPoint& p) const {
    if (p.inf) return p;
    Rat u2(u * u), u3(u * u * u);
    return ECPoint::affine(p.x / u2, p.y / u3);
}

// --- torsion -------------------------------------------------------------------

bool TorsionGroup::contains(const ECPoint& p) const {
    for (const auto& t : points)
        if (t == p) return true;
    return false;
}

namespace {

// X = 36 x + 3 b2, Y = 108 y + 54 (a1 x + a3) turns an integral model into
// Y^2 = X^3 - 27 c4 X - 54 c6 with integral coefficients.
struct ShortModel {
    WeierstrassCurve E;  // the short curve
    WeierstrassCurve Eo; // the integral model it came from

    ECPoint to_short(const ECPoint& p) const {
        if (p.inf) return p;
        Rat X = 36 * p.x + 3 * Eo.b2();
        Rat Y = 108 * p.y + 54 * (Eo.a1 * p.x + Eo.a3);
        return ECPoint::affine(X, Y);
    }
    ECPoint from_short(const ECPoint& p) const {
        if (p.inf) return p;
        Rat x = (p.x - 3 * Eo.b2()) / 36;
        Rat y = (p.y / 54 - Eo.a1 * x - Eo.a3) / 2;
        return ECPoint::affine(x, y);
    }
};

ShortModel shortify(const WeierstrassCurve& E_int) {
    ShortModel sm;
    sm.Eo = E_int;
    sm.E = make_weierstrass(Rat(0), Rat(0), Rat(0), -27 * E_int.c4(), -54 * E_int.c6());
    return sm;
}

// order of p on E if it divides some n <= 12 dividing `bound`, else 0
long finite_order(const WeierstrassCurve& E, const ECPoint& p, long bound) {
    ECPoint acc = ECPoint::infinity();
    for (long n = 1; n <= 12; n++) {
        acc = ec_add(E, acc, p);
        if (acc.inf) return (bound % n == 0) ? n : 0;
    }
    return 0;
}

} // namespace

TorsionGroup torsion_subgroup(const WeierstrassCurve& E) {
    if (is_zero(E.disc())) fail(errc::not_smooth, "torsion of a singular curve");
    IntegralModel im = integralize(E);

    TorsionGroup out;
    // 1. order bound from reduction mod good odd primes
    long bound = 0;
    uint64_t p = 3;
    while (out.primes_used.size() < 8) {
        if (good_reduction(im.E, p)) {
            long n = count_points_fp(im.E, p);
            out.primes_used.push_back(p);
            Int g = gcd(Int(bound), Int(n));
            bound = (long)g.get_si();
            if (bound == 1) break;
        }
        // next odd prime
        do p += 2;
        while (!is_small_prime(p));
    }
    out.order_bound = bound;

    std::vector<ECPoint> tors{ECPoint::infinity()};
    if (bound != 1) {
        // 2. integral candidates on the short model
        ShortModel sm = shortify(im.E);
        Rat A = sm.E.a4, B = sm.E.a6;
        Int Ai = A.get_num(), Bi = B.get_num();
        std::vector<ECPoint> candidates;
        for (const Int& x : monic_cubic_integer_roots(Ai, Bi))
            candidates.push_back(ECPoint::affine(Rat(x), Rat(0)));
        Int disc_short = sm.E.disc().get_num();
        Int s = square_root_part(factor(disc_short));
        for (const Int& yv : divisors(factor(s))) {
            // X^3 + A X + (B - y^2) = 0
            for (const Int& x : monic_cubic_integer_roots(Ai, Bi - yv * yv)) {
                candidates.push_back(ECPoint::affine(Rat(x), Rat(yv)));
                candidates.push_back(ECPoint::affine(Rat(x), Rat(-yv)));
            }
        }
        // 3. keep finite-order points, mapped back to the original curve
        for (const auto& c : candidates) {
            if (!sm.E.on_curve(c.x, c.y)) continue;
            if (finite_order(sm.E, c, bound) == 0) continue;
            tors.push_back(im.from_integral(sm.from_short(c)));
        }
        std::sort(tors.begin(), tors.end(), ecpoint_less);
        tors.erase(std::unique(tors.begin(), tors.end()), tors.end());
        // close under the group law (a complete enumeration is already closed;
        // this guards the implementation)
        bool grew = true;
        while (grew) {
            grew = false;
            size_t n = tors.size();
            for (size_t i = 0; i < n && !grew; i++)
                for (size_t j = i; j < n && !grew; j++) {
                    ECPoint sij = ec_add(E, tors[i], tors[j]);
                    bool present = false;
                    for (const auto& t : tors) present = present || t == sij;
                    if (!present) {
                        tors.push_back(sij);
                        grew = true;
                    }
                }
            if (tors.size() > 16) fail(errc::unclassifiable_torsion, "torsion closure exceeded 16 points");
        }
        std::sort(tors.begin(), tors.end(), ecpoint_less);
    }
    out.points = tors;

    // 4. classify against the fifteen admissible groups
    long n = (long)tors.size();
    long two_torsion = 0;
    for (const auto& t : tors)
        if (!t.inf && ec_add(E, t, t).inf) two_torsion++;
    auto order_of = [&](const ECPoint& t) {
        long o = 1;
        ECPoint acc = t;
        while (!acc.inf) {
            acc = ec_add(E, acc, t);
            o++;
            if (o > 16) fail(errc::unclassifiable_torsion, "element of order > 16");
        }
        return o;
    };
    bool ok = false;
    if (two_torsion <= 1) {
        ok = (n >= 1 && n <= 10) || n == 12;
        out.structure = "Z/" + std::to_string(n) + "Z";
        if (ok) {
            for (const auto& t : tors)
                if (order_of(t) == n) {
                    out.generators = {t};
                    break;
                }
            ok = n == 1 || !out.generators.empty();
        }
    } else if (two_torsion == 3) {
        long half = n / 2;
        ok = n % 4 == 0 && half >= 2 && half <= 8;
        out.structure = "Z/2Z x Z/" + std::to_string(half) + "Z";
        if (ok) {
            ECPoint g1 = ECPoint::infinity();
            for (const auto& t : tors)
                if (order_of(t) == half) {
                    g1 = t;
                    break;
                }
            ECPoint g2 = ECPoint::infinity();
            for (const auto& t : tors) {
                if (order_of(t) != 2) continue;
                bool in_g1 = false;
                for (long k = 0; k < half; k++) in_g1 = in_g1 || ec_mul(E, k, g1) == t;
                if (!in_g1) {
                    g2 = t;
                    break;
                }
            }
            if (g1.inf || g2.inf) ok = false;
            out.generators = {g2, g1};
        }
    }
    if (!ok) fail(errc::unclassifiable_torsion, "computed group of order " + std::to_string(n) +
                                                    " with " + std::to_string(two_torsion) + " involutions");
    return out;
}

// --- rank evidence --------------------------------------------------------------

RankEvidence rank0_falsify(const WeierstrassCurve& E, const TorsionGroup& T, long height_bound,
                           bool assume_rank0) {
    RankEvidence ev;
    ev.search_bound = height_bound;
    ev.primes_used = T.primes_used;
    if (assume_rank0) {
        ev.verdict = RankVerdict::assumed_rank0;
        return ev;
    }
    IntegralModel im = integralize(E);
    // eta^2 = 4 x^3 + b2 x^2 + 2 b4 x + b6 with eta = 2y + a1 x + a3
    Poly<Rat> g(std::vector<Rat>{im.E.b6(), 2 * im.E.b4(), im.E.b2(), Rat(4)});
    std::optional<ECPoint> witness;
    auto hits = search_y2_solutions(g, height_bound, false);
    for (const auto& hit : hits) {
        for (const Rat& eta : {hit.y, -hit.y}) {
            Rat y = (eta - im.E.a1 * hit.x - im.E.a3) / 2;
            if (!im.E.on_curve(hit.x, y)) continue;
            ECPoint p = im.from_integral(ECPoint::affine(hit.x, y));
            if (!T.contains(p)) {
                if (!witness || ecpoint_less(p, *witness)) witness = p;
            }
            if (is_zero(hit.y)) break;
        }
    }
    if (witness) {
        ev.verdict = RankVerdict::rank_positive;
        ev.witness = witness;
    } else {
        ev.verdict = RankVerdict::consistent_with_rank0;
    }
    return ev;
}

std::vector<ECPoint> mordell_weil_rank0(const WeierstrassCurve& E, const TorsionGroup& T,
                                        const RankEvidence& ev) {
    (void)E;
    if (ev.verdict == RankVerdict::rank_positive)
        fail(errc::rank_positive, "witness point outside the torsion subgroup");
    return T.points;
}

} // namespace qd
