#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qd/curves.hpp"
#include "qd/search.hpp"

namespace qd {

struct ECPoint {
    bool inf = true;
    Rat x, y;

    static ECPoint infinity() { return ECPoint{}; }
    static ECPoint affine(const Rat& x, const Rat& y) { return ECPoint{false, x, y}; }
    std::string str() const;
};

bool operator==(const ECPoint& a, const ECPoint& b);
bool ecpoint_less(const ECPoint& a, const ECPoint& b);

// Chord-tangent group law on the long Weierstrass model; points must satisfy
// the equation of E exactly.
ECPoint ec_neg(const WeierstrassCurve& E, const ECPoint& p);
ECPoint ec_add(const WeierstrassCurve& E, const ECPoint& p, const ECPoint& q);
ECPoint ec_mul(const WeierstrassCurve& E, long n, const ECPoint& p);

// Least u > 0 with (x, y) -> (u^2 x, u^3 y) giving integral coefficients.
struct IntegralModel {
    WeierstrassCurve E;
    Int u;

    ECPoint to_integral(const ECPoint& p) const;   // on the original curve -> integral model
    ECPoint from_integral(const ECPoint& p) const; // integral model -> original curve
};

IntegralModel integralize(const WeierstrassCurve& E);

struct TorsionGroup {
    std::vector<ECPoint> points; // complete, sorted, infinity first
    std::string structure;       // "Z/nZ" or "Z/2Z x Z/2nZ"
    std::vector<ECPoint> generators;
    std::vector<uint64_t> primes_used; // good odd primes behind the order bound
    long order_bound = 0;              // gcd of #E(F_p) over primes_used

    bool contains(const ECPoint& p) const;
};

// Torsion subgroup: bound the order by point counts mod good odd primes, then
// enumerate integral candidates with y = 0 or y^2 dividing the discriminant
// on a short integral model, keep the points of finite order, and classify.
TorsionGroup torsion_subgroup(const WeierstrassCurve& E);

enum class RankVerdict { consistent_with_rank0, rank_positive, assumed_rank0 };

struct RankEvidence {
    RankVerdict verdict;
    long search_bound = 0;
    std::vector<uint64_t> primes_used;
    std::optional<ECPoint> witness; // a rational point provably not torsion
};

// Naive-search falsification of the rank-0 assumption: any rational point
// with x-height at most the bound that is not in T is a witness.
RankEvidence rank0_falsify(const WeierstrassCurve& E, const TorsionGroup& T, long height_bound,
                           bool assume_rank0 = false);

// E(Q) under the rank-0 assumption (exactly the torsion list); throws
// RankPositive if the evidence says otherwise.
std::vector<ECPoint> mordell_weil_rank0(const WeierstrassCurve& E, const TorsionGroup& T,
                                        const RankEvidence& ev);

} // namespace qd
