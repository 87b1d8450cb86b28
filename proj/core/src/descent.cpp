#include "qd/descent.hpp"

#include <algorithm>

namespace qd {

const char* status_name(SolveStatusKind s) {
    switch (s) {
        case SolveStatusKind::solved: return "solved";
        case SolveStatusKind::empty_certified: return "empty_certified";
        case SolveStatusKind::rank_positive_quotient: return "rank_positive_quotient";
        case SolveStatusKind::undetermined: return "undetermined";
        case SolveStatusKind::not_eligible: return "not_eligible";
    }
    return "?";
}

std::vector<CurvePoint> rational_points_on_D(const QuotientData& q, const WeierstrassData& w,
                                             const std::vector<ECPoint>& EQ) {
    std::vector<CurvePoint> out;
    for (const auto& e : EQ) {
        EPointA ep{e.x, e.y, e.inf};
        if (auto dp = w.chain.bwd(ep)) {
            if (!q.D.on_curve(*dp)) fail(errc::internal, "backward map left the quotient curve");
            out.push_back(*dp);
        }
    }
    for (const auto& cand : w.exceptional_D)
        if (q.D.on_curve(cand)) out.push_back(cand);
    sort_dedupe(out);
    return out;
}

std::vector<CurvePoint> fiber(const CurveInput& C, const QuotientData& q, const CurvePoint& P) {
    if (!q.D.on_curve(P)) fail(errc::point_not_on_d, "fiber over a point not on D");
    std::vector<CurvePoint> out;
    if (q.hyperelliptic) {
        const auto& H = std::get<HyperellipticG3>(C);
        if (P.infinite()) {
            CurvePoint c{Rat(1), P.y, Rat(0), 4};
            if (H.on_curve(c)) out.push_back(c);
            return out;
        }
        if (auto s = rat_sqrt(P.x)) {
            std::vector<Rat> roots{*s};
            if (!is_zero(*s)) roots.push_back(-*s);
            for (const Rat& x : roots) {
                CurvePoint c = normalize_point(x, P.y, Rat(1), 4);
                if (!H.on_curve(c)) fail(errc::internal, "hyperelliptic fiber point off the curve");
                out.push_back(c);
            }
        }
        sort_dedupe(out);
        return out;
    }
    const auto& Q = std::get<PlaneQuartic>(C);
    Rat hval = q.h.zero() ? Rat(0) : q.h.eval(P.x, P.z);
    Rat ysq = (P.y + hval) / 2;
    if (auto s = rat_sqrt(ysq)) {
        std::vector<Rat> roots{*s};
        if (!is_zero(*s)) roots.push_back(-*s);
        for (const Rat& y : roots) {
            auto v = q.to_curve.apply({P.x, y, P.z});
            CurvePoint c = normalize_point(v[0], v[1], v[2], 1);
            if (!Q.on_curve(c)) fail(errc::internal, "quartic fiber point off the curve");
            out.push_back(c);
        }
    }
    sort_dedupe(out);
    return out;
}

long count_points_fp(const CurveInput& C, uint64_t p) {
    return std::visit([&](const auto& c) { return count_points_fp(c, p); }, C);
}

bool good_reduction(const CurveInput& C, uint64_t p) {
    return std::visit([&](const auto& c) { return good_reduction(c, p); }, C);
}

std::vector<uint64_t> default_audit_primes(const CurveInput& C) {
    std::vector<uint64_t> out;
    for (uint64_t p : primes_up_to(100))
        if (p > 6 && good_reduction(C, p)) out.push_back(p);
    return out;
}

std::vector<BoundAudit> audit_bounds(const CurveInput& C, size_t solved_size, long rank,
                                     bool rank_inferred, const std::vector<uint64_t>& primes) {
    const int g = 3;
    std::vector<BoundAudit> out;
    for (uint64_t p : primes) {
        if (!good_reduction(C, p)) continue;
        BoundAudit row;
        row.p = p;
        row.count = count_points_fp(C, p);
        row.rank = rank;
        row.rank_inferred = rank_inferred;
        if (rank < g) {
            row.coleman.present = true;
            row.coleman.value = row.count + 2 * g - 2;
            row.coleman.hypotheses_ok = p > 2 * (uint64_t)g;
            row.coleman.sharp = (long)solved_size == row.coleman.value;
            if (row.coleman.hypotheses_ok && (long)solved_size > row.coleman.value)
                fail(errc::bound_violated, "solved set exceeds the count bound at p = " + std::to_string(p));
        }
        if (rank < g - 1) {
            row.stoll.present = true;
            row.stoll.value = row.count + 2 * rank;
            row.stoll.hypotheses_ok = (long)p > 2 * rank + 2;
            row.stoll.sharp = (long)solved_size == row.stoll.value;
            if (row.stoll.hypotheses_ok && (long)solved_size > row.stoll.value)
                fail(errc::bound_violated, "solved set exceeds the rank bound at p = " + std::to_string(p));
        }
        out.push_back(row);
    }
    return out;
}

// --- brute-force oracles -------------------------------------------------------

namespace {

Int triple_height(const Rat& x, const Rat& y) {
    Int D = 1;
    mpz_lcm(D.get_mpz_t(), x.get_den().get_mpz_t(), y.get_den().get_mpz_t());
    Int X = x.get_num() * (D / x.get_den());
    Int Y = y.get_num() * (D / y.get_den());
    Int g;
    mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), D.get_mpz_t());
    if (g == 0) g = 1;
    Int h = abs(X);
    if (abs(Y) > h) h = abs(Y);
    if (D > h) h = D;
    return h / g;
}

} // namespace

Int quartic_point_height(const CurvePoint& p) { return triple_height(p.x, p.y); }

std::vector<CurvePoint> search_points_quartic(const PlaneQuartic& C, long height) {
    // primitive integer form once; values then stay integral
    Int L = 1;
    C.Q.for_each([&](int, int, int, const Rat& co) {
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), co.get_den().get_mpz_t());
    });
    bool small = true;
    std::vector<std::pair<std::pair<int, int>, Int>> terms;
    C.Q.for_each([&](int i, int j, int, const Rat& co) {
        if (is_zero(co)) return;
        Int c = co.get_num() * (L / co.get_den());
        if (!c.fits_slong_p() || std::abs(c.get_si()) > (1L << 60) / 8) small = false;
        terms.push_back({{i, j}, c});
    });

    std::vector<CurvePoint> found;
    auto consider = [&](long x, long y, long z) {
        CurvePoint p = normalize_point(Rat(x), Rat(y), Rat(z), 1);
        if (C.on_curve(p)) found.push_back(p);
    };

    if (small) {
        // per (y, z): coefficients of x^i as int128, then Horner over x
        for (long z = 0; z <= height; z++) {
            long ylo = z == 0 ? 0 : -height;
            for (long y = ylo; y <= height; y++) {
                __int128 xc[5] = {0, 0, 0, 0, 0};
                for (const auto& [ij, c] : terms) {
                    int i = ij.first, j = ij.second, k = 4 - i - j;
                    __int128 t = (__int128)c.get_si();
                    for (int e = 0; e < j; e++) t *= y;
                    for (int e = 0; e < k; e++) t *= z;
                    xc[i] += t;
                }
                long xlo = (z == 0 && y == 0) ? 1 : -height;
                long xhi = (z == 0 && y == 0) ? 1 : height;
                for (long x = xlo; x <= xhi; x++) {
                    __int128 acc = 0;
                    for (int i = 4; i >= 0; i--) acc = acc * x + xc[i];
                    if (acc == 0) consider(x, y, z);
                }
            }
        }
    } else {
        for (long z = 0; z <= height; z++) {
            long ylo = z == 0 ? 0 : -height;
            for (long y = ylo; y <= height; y++) {
                long xlo = (z == 0 && y == 0) ? 1 : -height;
                long xhi = (z == 0 && y == 0) ? 1 : height;
                for (long x = xlo; x <= xhi; x++) {
                    if (is_zero(C.Q.eval(Rat(x), Rat(y), Rat(z)))) consider(x, y, z);
                }
            }
        }
    }
    sort_dedupe(found);
    return found;
}

std::vector<CurvePoint> search_points_hyperelliptic(const HyperellipticG3& C, long height) {
    std::vector<CurvePoint> found;
    // infinity: y^2 = F(1, 0)
    if (auto s = rat_sqrt(C.F.coeff_or(8, Rat(0)))) {
        found.push_back(CurvePoint{Rat(1), *s, Rat(0), 4});
        if (!is_zero(*s)) found.push_back(CurvePoint{Rat(1), -*s, Rat(0), 4});
    }
    for (long b = 1; b <= height; b++)
        for (long a = -height; a <= height; a++) {
            if (std::gcd(std::abs(a), b) != 1) continue;
            Rat v = C.F.eval(Rat(a), Rat(b));
            if (auto s = rat_sqrt(v)) {
                CurvePoint p = normalize_point(Rat(a), *s, Rat(b), 4);
                found.push_back(p);
                if (!is_zero(*s)) found.push_back(normalize_point(Rat(a), -*s, Rat(b), 4));
            }
        }
    sort_dedupe(found);
    return found;
}

// --- the driver ------------------------------------------------------------------

namespace {

std::vector<Involution> detect_for(const CurveInput& C, const std::vector<Mat3>& extra) {
    if (std::holds_alternative<PlaneQuartic>(C))
        return detect_involutions(std::get<PlaneQuartic>(C), extra);
    return detect_involutions(std::get<HyperellipticG3>(C));
}

QuotientData build_for(const CurveInput& C, const Involution& s) {
    if (std::holds_alternative<PlaneQuartic>(C)) return build_quotient(std::get<PlaneQuartic>(C), s);
    return build_quotient(std::get<HyperellipticG3>(C), s);
}

std::vector<CurvePoint> oracle_search(const CurveInput& C, long height) {
    if (std::holds_alternative<PlaneQuartic>(C))
        return search_points_quartic(std::get<PlaneQuartic>(C), height);
    return search_points_hyperelliptic(std::get<HyperellipticG3>(C), height);
}

Int solved_point_height(const CurvePoint& p, bool quartic) {
    if (quartic) return quartic_point_height(p);
    return point_height(p);
}

} // namespace

SolveResult solve_curve(const CurveInput& C, const SolveOptions& opt) {
    SolveResult res;
    const bool is_quartic = std::holds_alternative<PlaneQuartic>(C);
    if (is_quartic) res.ciani = ciani_parameters(std::get<PlaneQuartic>(C));
    res.involutions = detect_for(C, opt.extra_transforms);
    if (res.involutions.empty()) {
        res.status = SolveStatusKind::not_eligible;
        res.status_detail = "no involution found";
        return res;
    }

    int selected = -1;
    bool empty_certified = false;
    const bool evaluate_all = res.ciani.ciani;

    for (const auto& inv : res.involutions) {
        QuotientReport qr;
        qr.sigma = inv;
        bool decisive = false;
        try {
            qr.quotient = build_for(C, inv);
            qr.genus1_ok = true;
        } catch (const Error& e) {
            if (e.code() != errc::quotient_not_genus1) throw;
            qr.genus1_error = e.what();
        }
        if (qr.genus1_ok) {
            qr.search = find_point_genus1(qr.quotient->D, opt.height_bound);
            if (qr.search->outcome == G1Outcome::point_found) {
                qr.weierstrass = quartic_to_weierstrass(qr.quotient->D, *qr.search->point);
                qr.torsion = torsion_subgroup(qr.weierstrass->E);
                qr.rank = rank0_falsify(qr.weierstrass->E, *qr.torsion, opt.height_bound, opt.assume_rank0);
            } else {
                // no point yet: audit the rank on the Jacobian built from the
                // quartic invariants
                qr.rank_from_jacobian_invariants = true;
                WeierstrassCurve jac = jacobian_by_invariants(qr.quotient->D);
                qr.torsion = torsion_subgroup(jac);
                qr.rank = rank0_falsify(jac, *qr.torsion, opt.height_bound, opt.assume_rank0);
            }
            if (selected < 0 && !empty_certified) {
                if (qr.search->outcome == G1Outcome::locally_unsolvable) {
                    empty_certified = true;
                    qr.selected = true;
                    res.status = SolveStatusKind::empty_certified;
                    res.status_detail = qr.search->witness;
                } else if (qr.search->outcome == G1Outcome::point_found &&
                           qr.rank->verdict != RankVerdict::rank_positive) {
                    qr.selected = true;
                    std::vector<ECPoint> EQ = mordell_weil_rank0(qr.weierstrass->E, *qr.torsion, *qr.rank);
                    res.d_points = rational_points_on_D(*qr.quotient, *qr.weierstrass, EQ);
                    std::vector<CurvePoint> S;
                    for (const auto& dp : res.d_points) {
                        auto f = fiber(C, *qr.quotient, dp);
                        S.insert(S.end(), f.begin(), f.end());
                    }
                    sort_dedupe(S);
                    if (S.size() > 2 * res.d_points.size())
                        fail(errc::internal, "fibers produced more than 2 points per base point");
                    // containment psi(C(Q)) in D(Q)
                    for (const auto& cp : S) {
                        CurvePoint img = quotient_map_point(*qr.quotient, cp);
                        bool in_d = false;
                        for (const auto& dp : res.d_points) in_d = in_d || dp == img;
                        if (!in_d) fail(errc::internal, "psi image escaped D(Q)");
                    }
                    res.points = std::move(S);
                    res.status = SolveStatusKind::solved;
                }
            }
        }
        selected = qr.selected ? (int)res.quotients.size() : selected;
        decisive = qr.selected;
        res.quotients.push_back(std::move(qr));
        if (decisive && !evaluate_all) break;
    }

    if (res.status != SolveStatusKind::solved && res.status != SolveStatusKind::empty_certified) {
        bool any_rank0_undetermined = false;
        bool any_rank_positive = false;
        std::string witness;
        for (const auto& qr : res.quotients) {
            if (!qr.genus1_ok || !qr.rank) continue;
            if (qr.rank->verdict == RankVerdict::rank_positive) {
                if (!any_rank_positive && qr.rank->witness) witness = qr.rank->witness->str();
                any_rank_positive = true;
            } else if (qr.search && qr.search->outcome == G1Outcome::undetermined) {
                any_rank0_undetermined = true;
            }
        }
        if (any_rank0_undetermined) {
            res.status = SolveStatusKind::undetermined;
            res.status_detail = "no quotient point within height " + std::to_string(opt.height_bound);
        } else if (any_rank_positive) {
            res.status = SolveStatusKind::rank_positive_quotient;
            res.status_detail = witness;
        } else {
            res.status = SolveStatusKind::not_eligible;
            res.status_detail = "no genus-1 quotient";
        }
    }

    // invariance of the solved set under every involution
    if (res.status == SolveStatusKind::solved && is_quartic) {
        for (const auto& inv : res.involutions) {
            for (const auto& p : res.points) {
                auto v = inv.sigma.apply({p.x, p.y, p.z});
                CurvePoint ip = normalize_point(v[0], v[1], v[2], 1);
                bool in_s = false;
                for (const auto& sp : res.points) in_s = in_s || sp == ip;
                if (!in_s) fail(errc::internal, "solved set not closed under an involution");
            }
        }
    }

    // independent search oracle
    if (res.status == SolveStatusKind::solved || res.status == SolveStatusKind::empty_certified) {
        res.oracle_height = opt.oracle_bound;
        auto searched = oracle_search(C, opt.oracle_bound);
        std::vector<CurvePoint> expected;
        for (const auto& p : res.points)
            if (solved_point_height(p, is_quartic) <= opt.oracle_bound) expected.push_back(p);
        sort_dedupe(expected);
        if (!(searched == expected))
            fail(errc::internal, "brute-force search disagrees with the solved set (" +
                                     std::to_string(searched.size()) + " vs " + std::to_string(expected.size()) + ")");
        res.oracle_ok = true;
    }

    // bound audits when the rank is known
    if (res.status == SolveStatusKind::solved) {
        std::optional<long> rank = opt.assumed_rank;
        bool inferred = false;
        if (!rank && res.ciani.ciani) {
            int ok = 0, with_rank = 0;
            for (const auto& qr : res.quotients) {
                if (!qr.rank) continue;
                with_rank++;
                if (qr.rank->verdict != RankVerdict::rank_positive) ok++;
            }
            if (with_rank == 3 && ok == 3) {
                rank = 0;
                inferred = true;
            }
        }
        if (rank) {
            res.audit_rank = rank;
            res.rank_inferred = inferred;
            std::vector<uint64_t> primes = opt.audit_primes.empty() ? default_audit_primes(C) : opt.audit_primes;
            res.audits = audit_bounds(C, res.points.size(), *rank, inferred, primes);
        }
    }
    return res;
}

} // namespace qd
