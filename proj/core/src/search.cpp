#include "qd/search.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace qd {

namespace {

struct XKey {
    Int h;
    int sub;
    Int k1;
    int k2;
};

XKey x_key(const Rat& x) {
    Int a = x.get_num(), b = x.get_den();
    Int aa = abs(a);
    Int h = aa > b ? aa : b;
    if (b == h) return XKey{h, 0, aa, sgn(a) < 0};
    return XKey{h, 1, b, sgn(a) < 0};
}

// y^2 = g(x) cleared to integers: Y^2 = N(a, b), Y = L * y * b^2.
struct ClearedQuartic {
    std::array<Int, 5> G{}; // N(a,b) = sum G[i] a^i b^(4-i)
    Int L = 1;

    explicit ClearedQuartic(const Poly<Rat>& g) {
        for (const auto& q : g.c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
        Int L2 = L * L;
        for (int i = 0; i <= 4; i++) {
            if (i < (int)g.c.size()) {
                Rat s = g.c[(size_t)i] * Rat(L2);
                G[(size_t)i] = s.get_num();
            }
        }
    }

    Int value(const Int& a, const Int& b) const {
        Int b2 = b * b, b3 = b2 * b, b4 = b2 * b2;
        return ((G[4] * a + G[3] * b) * a + G[2] * b2) * a * a + G[1] * a * b3 + G[0] * b4;
    }

    std::optional<SearchHit> check(long a, long b) const {
        Int A(a), B(b);
        Int n = value(A, B);
        if (sgn(n) < 0 || !is_square(n)) return std::nullopt;
        Rat x = make_rat(A, B);
        Rat y = make_rat(isqrt(n), L * B * B);
        return SearchHit{x, y};
    }
};

constexpr long kSmallCap = 200;
constexpr uint64_t kSievePrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

void sieve_range(const ClearedQuartic& cq, long height, std::vector<SearchHit>& hits) {
    const long W = 2 * height + 1;
    const size_t nwords = (size_t)((W + 63) / 64);

    // per (prime, b mod p): a 64p-bit pattern aligned to a = -height at bit 0;
    // bit t set iff N(-height + t, b) mod p can be a square
    struct PrimePat {
        uint64_t p;
        std::vector<std::vector<uint64_t>> pat; // [b mod p][word in 0..p)
    };
    std::vector<PrimePat> pats;
    for (uint64_t p : kSievePrimes) {
        std::vector<bool> qr(p, false);
        qr[0] = true;
        for (uint64_t v = 1; v < p; v++) qr[(v * v) % p] = true;
        std::array<uint64_t, 5> gm;
        for (int i = 0; i <= 4; i++) gm[(size_t)i] = mod_p(cq.G[(size_t)i], p);
        PrimePat pp{p, {}};
        pp.pat.assign(p, std::vector<uint64_t>(p, 0));
        long start = -height;
        uint64_t start_mod = (uint64_t)(((start % (long)p) + (long)p) % (long)p);
        for (uint64_t bm = 0; bm < p; bm++) {
            std::vector<bool> ok(p);
            for (uint64_t am = 0; am < p; am++) {
                uint64_t n = 0;
                for (int i = 4; i >= 0; i--) n = (n * am + gm[(size_t)i] * pow_mod(bm, (uint64_t)(4 - i), p)) % p;
                ok[am] = qr[n];
            }
            for (uint64_t t = 0; t < 64 * p; t++) {
                if (ok[(start_mod + t) % p]) pp.pat[bm][t / 64] |= (uint64_t)1 << (t % 64);
            }
        }
        pats.push_back(std::move(pp));
    }

    std::vector<uint64_t> mask(nwords);
    for (long b = 1; b <= height; b++) {
        std::fill(mask.begin(), mask.end(), ~(uint64_t)0);
        if ((size_t)W % 64) mask[nwords - 1] = (~(uint64_t)0) >> (64 - (size_t)W % 64);
        for (const auto& pp : pats) {
            const auto& pat = pp.pat[(uint64_t)b % pp.p];
            for (size_t w = 0; w < nwords; w++) mask[w] &= pat[w % pp.p];
        }
        for (size_t w = 0; w < nwords; w++) {
            uint64_t bits = mask[w];
            while (bits) {
                int t = __builtin_ctzll(bits);
                bits &= bits - 1;
                long a = -height + (long)(w * 64) + t;
                if (std::gcd(std::abs(a), b) != 1) continue;
                if (auto hit = cq.check(a, b)) hits.push_back(*hit);
            }
        }
    }
}

} // namespace

bool x_search_less(const Rat& lhs, const Rat& rhs) {
    XKey a = x_key(lhs), b = x_key(rhs);
    if (a.h != b.h) return a.h < b.h;
    if (a.sub != b.sub) return a.sub < b.sub;
    if (a.k1 != b.k1) return a.k1 < b.k1;
    return a.k2 < b.k2;
}

std::vector<SearchHit> search_y2_solutions(const Poly<Rat>& g, long height, bool stop_after_first,
                                           const std::function<bool(const SearchHit&)>& accept) {
    std::vector<SearchHit> hits;
    if (height < 1) return hits;
    ClearedQuartic cq(g);

    auto try_pair = [&](long a, long b) -> bool {
        if (std::gcd(std::abs(a), b) != 1) return false;
        auto hit = cq.check(a, b);
        if (!hit) return false;
        if (accept && !accept(*hit)) return false;
        hits.push_back(*hit);
        return true;
    };

    // small heights in preference order; answers the common case immediately
    long small = std::min(height, kSmallCap);
    for (long h = 1; h <= small; h++) {
        for (long aa = 0; aa <= h; aa++)
            for (int s : {+1, -1}) {
                if (aa == 0 && s < 0) continue;
                if (try_pair(s * aa, h) && stop_after_first) return hits;
            }
        for (long b = 1; b < h; b++)
            for (int s : {+1, -1})
                if (try_pair(s * h, b) && stop_after_first) return hits;
    }
    if (height <= kSmallCap) {
        std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) { return x_search_less(a.x, b.x); });
        return hits;
    }

    std::vector<SearchHit> all;
    sieve_range(cq, height, all);
    for (auto& hit : all) {
        if (rat_height(hit.x) <= kSmallCap) continue; // already covered above
        if (accept && !accept(hit)) continue;
        hits.push_back(hit);
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) { return x_search_less(a.x, b.x); });
    hits.erase(std::unique(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) { return a.x == b.x; }),
               hits.end());
    if (stop_after_first && hits.size() > 1) hits.resize(1);
    return hits;
}

} // namespace qd
