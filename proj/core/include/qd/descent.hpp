#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qd/ell.hpp"
#include "qd/quotient.hpp"

namespace qd {

using CurveInput = std::variant<PlaneQuartic, HyperellipticG3>;

enum class SolveStatusKind {
    solved,
    empty_certified,
    rank_positive_quotient,
    undetermined,
    not_eligible,
};

const char* status_name(SolveStatusKind s);

struct BoundValue {
    bool present = false;       // rank hypothesis satisfied
    long value = 0;             // count + correction
    bool hypotheses_ok = false; // prime-size hypothesis also satisfied
    bool sharp = false;         // solved-set size equals the value
};

struct BoundAudit {
    uint64_t p = 0;
    long count = 0;
    int genus = 3;
    long rank = 0;
    bool rank_inferred = false;
    BoundValue coleman; // count + 2g - 2, needs rank < g and p > 2g
    BoundValue stoll;   // count + 2r, needs rank < g - 1 and p > 2r + 2
};

struct QuotientReport {
    Involution sigma;
    bool genus1_ok = false;
    std::string genus1_error;
    std::optional<QuotientData> quotient;
    std::optional<G1PointSearch> search;
    std::optional<WeierstrassData> weierstrass; // built when a point was found
    bool rank_from_jacobian_invariants = false; // evidence curve built without a point
    std::optional<TorsionGroup> torsion;
    std::optional<RankEvidence> rank;
    bool selected = false;
};

struct SolveOptions {
    long height_bound = 10000;
    long oracle_bound = 100;
    std::vector<uint64_t> audit_primes; // empty = good primes in (2g, 100]
    bool assume_rank0 = false;
    std::optional<long> assumed_rank;
    std::vector<Mat3> extra_transforms;
};

struct SolveResult {
    SolveStatusKind status = SolveStatusKind::not_eligible;
    std::string status_detail;
    std::vector<CurvePoint> points;   // C(Q) when solved
    std::vector<CurvePoint> d_points; // D(Q) of the selected quotient
    std::vector<Involution> involutions;
    CianiData ciani;
    std::vector<QuotientReport> quotients;
    std::vector<BoundAudit> audits;
    std::optional<long> audit_rank;
    bool rank_inferred = false;
    long oracle_height = 0;
    bool oracle_ok = false;
};

// Points of D(Q): the torsion list mapped through the backward map, plus the
// rational exceptional candidates, every output verified on D.
std::vector<CurvePoint> rational_points_on_D(const QuotientData& q, const WeierstrassData& w,
                                             const std::vector<ECPoint>& EQ);

// Rational preimages of a point of D under the quotient map.
std::vector<CurvePoint> fiber(const CurveInput& C, const QuotientData& q, const CurvePoint& P);

std::vector<BoundAudit> audit_bounds(const CurveInput& C, size_t solved_size, long rank,
                                     bool rank_inferred, const std::vector<uint64_t>& primes);

SolveResult solve_curve(const CurveInput& C, const SolveOptions& opt);

// Brute-force projective searches, used as independent oracles.
std::vector<CurvePoint> search_points_quartic(const PlaneQuartic& C, long height);
std::vector<CurvePoint> search_points_hyperelliptic(const HyperellipticG3& C, long height);

std::vector<uint64_t> default_audit_primes(const CurveInput& C);

long count_points_fp(const CurveInput& C, uint64_t p);
bool good_reduction(const CurveInput& C, uint64_t p);

} // namespace qd
