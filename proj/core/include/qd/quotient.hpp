#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qd/curves.hpp"
#include "qd/mat3.hpp"
#include "qd/search.hpp"

namespace qd {

// An order-2 symmetry of the curve equation.  For plane quartics this is a
// 3x3 matrix conjugate to a single-coordinate sign flip; for hyperelliptic
// models it is x -> -x.
struct Involution {
    int axis = 1;      // 0 = X, 1 = Y, 2 = Z: the flip this is conjugate to
    Mat3 sigma;        // action on coordinates (projectively normalized)
    Mat3 conjugator;   // M with (Q o M) invariant under the axis flip
    bool hyperelliptic = false;

    std::string kind() const;
};

std::vector<Involution> detect_involutions(const PlaneQuartic& C, const std::vector<Mat3>& extra = {});
std::vector<Involution> detect_involutions(const HyperellipticG3& C);

struct CianiData {
    bool ciani = false;
    Rat a1, a2, a3, b1, b2, b3;
};

// Even quartics a1 X^4 + a2 Y^4 + a3 Z^4 + 2(b1 Y^2Z^2 + b2 X^2Z^2 + b3 X^2Y^2).
CianiData ciani_parameters(const PlaneQuartic& C);

// Degree-2 quotient of C by an involution, presented as y^2 = G(x,z) in
// P(1,2,1) together with the quotient map data.
struct QuotientData {
    bool hyperelliptic = false;
    Genus1Quartic D;
    BinForm<Rat> h, r; // quartic case: normalized model Y^4 - h Y^2 + r
    Mat3 to_curve;     // quartic case: maps normalized coordinates back to C
    Involution sigma;
    std::string psi_formula;
};

QuotientData build_quotient(const PlaneQuartic& C, const Involution& s);
QuotientData build_quotient(const HyperellipticG3& C, const Involution& s);

// psi applied to a point of C (exact; result is on D).
CurvePoint quotient_map_point(const QuotientData& q, const CurvePoint& p);

// --- rational points on the genus-1 quotient ---------------------------------

enum class G1Outcome { point_found, locally_unsolvable, undetermined };

struct G1PointSearch {
    G1Outcome outcome;
    std::optional<CurvePoint> point;
    std::string witness; // failing completion for locally_unsolvable ("R" or a prime)
    long height_bound = 0;
};

G1PointSearch find_point_genus1(const Genus1Quartic& D, long height_bound);

// Z_p-solvability certification used by find_point_genus1; exposed for tests.
// Returns false only when unsolvability over Q_p is certified.
bool qp_solvable(const Poly<Rat>& g_integer, uint64_t p);

// --- birational maps to Weierstrass form -------------------------------------

struct EPointA {
    Rat x, y;
    bool inf = false;
};

// One step of the composite transformation; fwd goes toward E.
struct StTranslate {
    Rat x0; // (x, y) -> (x - x0, y)
};
struct StReverse {}; // (x : y : z) -> (z : y : x) on P(1,2,1)
struct StQuarticToCubic {
    // y^2 = a x^4 + b x^3 + c x^2 + d x + q^2, q != 0, to z^2 = cubic(t)
    Rat q, a, b, c, d;
};
struct StCubicScale {
    Rat c3; // z^2 = c3 t^3 + ... to Y^2 = X^3 + ..., (t, z) -> (c3 t, c3 z)
};
using MapStage = std::variant<StTranslate, StReverse, StQuarticToCubic, StCubicScale>;

struct MapChain {
    std::vector<MapStage> stages;

    std::optional<EPointA> fwd(const CurvePoint& p) const;
    std::optional<CurvePoint> bwd(const EPointA& e) const;
    std::string describe() const;
};

struct WeierstrassData {
    WeierstrassCurve E;
    MapChain chain;
    // Rational candidates where the maps are undefined; rational_points_on_D
    // re-checks these directly.
    std::vector<CurvePoint> exceptional_D;
    std::vector<EPointA> exceptional_E; // besides the point at infinity
};

WeierstrassData quartic_to_weierstrass(const Genus1Quartic& D, const CurvePoint& P0);

// Weierstrass model of the Jacobian of y^2 = quartic via the classical
// invariants I, J (no rational point needed): y^2 = x^3 - 27 I x - 27 J.
WeierstrassCurve jacobian_by_invariants(const Genus1Quartic& D);

// --- mod-p evaluation of the chain (for the map round-trip properties) -------

struct WPointFp {
    Fp x, y, z; // weights (1, 2, 1)
};

struct EPointFp {
    Fp x, y;
    bool inf = false;
};

std::optional<EPointFp> chain_fwd_fp(const MapChain& chain, const WPointFp& p, uint64_t prime);
std::optional<WPointFp> chain_bwd_fp(const MapChain& chain, const EPointFp& e, uint64_t prime);

} // namespace qd
