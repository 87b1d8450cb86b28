#include "qd/rational.hpp"

#include <algorithm>

namespace qd {

Rat parse_rat(const std::string& text) {
    if (text.empty()) fail(errc::parse_error, "empty rational literal");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        fail(errc::parse_error, "bad rational literal '" + text + "'");
    if (q.get_den() == 0) fail(errc::parse_error, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::optional<Rat> rat_sqrt(const Rat& a) {
    if (sgn(a) < 0) return std::nullopt;
    const Int& n = a.get_num();
    const Int& d = a.get_den();
    if (!is_square(n) || !is_square(d)) return std::nullopt;
    return make_rat(isqrt(n), isqrt(d));
}

bool is_small_prime(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (uint64_t f = 5; f * f <= n; f += 6) {
        if (n % f == 0 || n % (f + 2) == 0) return false;
    }
    return true;
}

std::vector<uint64_t> primes_up_to(uint64_t n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<uint64_t> out;
    for (uint64_t i = 2; i <= n; i++) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (uint64_t j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return out;
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent's cycle variant; n is odd, composite, and has no factor < 10^6.
    for (unsigned long c = 1;; c++) {
        Int x = 2, y = 2, d = 1;
        Int diff, prod = 1;
        int iter = 0;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            prod = (prod * diff) % n;
            if (++iter % 64 == 0) {
                mpz_gcd(d.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
                if (d > 1) break;
            }
        }
        if (d == 1) {
            mpz_gcd(d.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
        }
        if (d > 1 && d < n) return d;
        // cycle collapsed or found n itself: retry with another constant
    }
}

void factor_rec(const Int& n, std::vector<std::pair<Int, int>>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out.push_back({n, 1});
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

std::vector<std::pair<Int, int>> factor(const Int& n_in) {
    std::vector<std::pair<Int, int>> out;
    Int n = abs(n_in);
    if (n <= 1) return out;
    {
        int e = 0;
        while (mpz_even_p(n.get_mpz_t())) {
            n >>= 1;
            e++;
        }
        if (e) out.push_back({Int(2), e});
    }
    for (uint64_t f = 3; f < 1000000 && n > 1; f += 2) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), f)) {
            if (mpz_cmp_ui(n.get_mpz_t(), f * f) < 0) break;
            continue;
        }
        int e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), f)) {
            n /= (unsigned long)f;
            e++;
        }
        out.push_back({Int((unsigned long)f), e});
    }
    if (n > 1) {
        std::vector<std::pair<Int, int>> rest;
        factor_rec(n, rest);
        std::sort(rest.begin(), rest.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& pe : rest) {
            if (!out.empty() && out.back().first == pe.first)
                out.back().second += pe.second;
            else
                out.push_back(pe);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<Int> divisors(const std::vector<std::pair<Int, int>>& fac) {
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : fac) {
        size_t base = out.size();
        Int pk = 1;
        for (int k = 1; k <= e; k++) {
            pk *= p;
            for (size_t i = 0; i < base; i++) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int square_root_part(const std::vector<std::pair<Int, int>>& fac) {
    Int s = 1;
    for (const auto& [p, e] : fac) {
        for (int k = 0; k < e / 2; k++) s *= p;
    }
    return s;
}

} // namespace qd
