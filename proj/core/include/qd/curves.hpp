#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qd/binform.hpp"
#include "qd/poly.hpp"
#include "qd/ternform.hpp"

namespace qd {

// Point of a weighted projective space P(1,w,1), w in {1,2,4}, stored in the
// canonical representative: z = 1 when z != 0, else x = 1.
struct CurvePoint {
    Rat x, y, z;
    int wy = 1;

    bool infinite() const { return is_zero(z); }
    std::string str() const { return "(" + rat_str(x) + " : " + rat_str(y) + " : " + rat_str(z) + ")"; }
};

CurvePoint normalize_point(const Rat& x, const Rat& y, const Rat& z, int wy);
bool operator==(const CurvePoint& a, const CurvePoint& b);
bool point_less(const CurvePoint& a, const CurvePoint& b);

void sort_dedupe(std::vector<CurvePoint>& pts);

// Height of the (x : z) part in primitive integer coordinates.
Int point_height(const CurvePoint& p);

// ---------------------------------------------------------------------------

// Genus-3 hyperelliptic model y^2 = F(x, z) in P(1,4,1), F of declared
// degree 8 with squarefree dehomogenization of degree 7 or 8.
struct HyperellipticG3 {
    BinForm<Rat> F;

    Poly<Rat> f() const { return F.dehom(); }
    bool on_curve(const CurvePoint& p) const;
};

HyperellipticG3 validate_hyperelliptic(const BinForm<Rat>& F);

// Smooth plane quartic in P^2.
struct PlaneQuartic {
    TernForm<Rat> Q;

    bool on_curve(const CurvePoint& p) const;
    // Coefficients in descending lexicographic monomial order
    // X^4, X^3Y, X^3Z, X^2Y^2, X^2YZ, X^2Z^2, XY^3, XY^2Z, XYZ^2, XZ^3,
    // Y^4, Y^3Z, Y^2Z^2, YZ^3, Z^4.
    std::array<Rat, 15> coeffs15() const;
};

PlaneQuartic validate_quartic(const std::array<Rat, 15>& coeffs);
PlaneQuartic validate_quartic(const TernForm<Rat>& Q);

TernForm<Rat> quartic_from_coeffs15(const std::array<Rat, 15>& coeffs);

// Genus-1 model y^2 = G(x, z) in P(1,2,1), G of declared degree 4 with
// squarefree dehomogenization of degree 3 or 4.
struct Genus1Quartic {
    BinForm<Rat> G;

    Poly<Rat> g() const { return G.dehom(); }
    bool on_curve(const CurvePoint& p) const;
    std::vector<CurvePoint> points_at_infinity() const;
};

Genus1Quartic validate_genus1(const BinForm<Rat>& G);

// Elliptic curve in long Weierstrass form y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct WeierstrassCurve {
    Rat a1, a2, a3, a4, a6;

    Rat b2() const { return a1 * a1 + 4 * a2; }
    Rat b4() const { return 2 * a4 + a1 * a3; }
    Rat b6() const { return a3 * a3 + 4 * a6; }
    Rat b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    Rat c4() const { return b2() * b2() - 24 * b4(); }
    Rat c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    Rat disc() const;
    Rat j() const { return c4() * c4() * c4() / disc(); }

    // y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6 at (x, y)
    Rat eval(const Rat& x, const Rat& y) const;
    bool on_curve(const Rat& x, const Rat& y) const { return is_zero(eval(x, y)); }
};

WeierstrassCurve make_weierstrass(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& a4, const Rat& a6);

// --- point counting over F_p -----------------------------------------------

long count_points_fp(const PlaneQuartic& C, uint64_t p);
long count_points_fp(const HyperellipticG3& C, uint64_t p);
long count_points_fp(const Genus1Quartic& C, uint64_t p);
long count_points_fp(const WeierstrassCurve& E, uint64_t p);

// Conservative good-reduction tests (false may mean "bad for this model").
bool good_reduction(const PlaneQuartic& C, uint64_t p);
bool good_reduction(const HyperellipticG3& C, uint64_t p);
bool good_reduction(const Genus1Quartic& C, uint64_t p);
bool good_reduction(const WeierstrassCurve& E, uint64_t p);

// |#E(F_p) - (p+1)| <= 2 sqrt(p), checked exactly as (N - p - 1)^2 <= 4p.
bool hasse_check(const WeierstrassCurve& E, uint64_t p);

// --- smoothness certificate for plane quartics ------------------------------

enum class SmoothVerdict { smooth, singular, undecided };

// Iterated-resultant certificate on the partial derivatives, run over the
// three elimination orderings; the coordinate points invisible to an ordering
// are checked directly.
template <class K>
SmoothVerdict quartic_smooth_certificate(const TernForm<K>& Q, const K& model);

// Legendre-sum count for y^2 = F(x,z) with an infinity correction: the
// reduction of a leading coefficient to 0 contributes one point, otherwise
// 1 + legendre(lc) points.
long count_hyperelliptic_model(const BinForm<Rat>& F, uint64_t p);

} // namespace qd
