#include <doctest.h>

#include <random>

#include "qd/binform.hpp"
#include "qd/poly.hpp"

using namespace qd;

namespace {

Poly<Rat> P(std::initializer_list<long> cs) { return poly_from_longs(std::vector<long>(cs)); }

std::mt19937_64 rng(20240817);

Poly<Rat> random_poly(int maxdeg, long maxc) {
    std::uniform_int_distribution<int> dd(0, maxdeg);
    std::uniform_int_distribution<long> dc(-maxc, maxc);
    int d = dd(rng);
    std::vector<Rat> c;
    for (int i = 0; i <= d; i++) c.push_back(Rat(dc(rng)));
    Poly<Rat> f{c};
    return f;
}

Poly<Rat> random_nonzero(int maxdeg, long maxc) {
    while (true) {
        Poly<Rat> f = random_poly(maxdeg, maxc);
        if (!f.zero()) return f;
    }
}

// determinant route, independent of the subresultant implementation
Rat oracle_resultant(const Poly<Rat>& a, const Poly<Rat>& b) {
    return sylvester_resultant(a.c, b.c, Rat(0));
}

} // namespace

TEST_CASE("gcd examples") {
    Poly<Rat> g = poly_gcd(P({-1, 0, 1}), P({-1, 1}));
    CHECK(g == P({-1, 1}));
    // exact division oracle: the gcd divides both inputs with zero remainder
    CHECK(divrem(P({-1, 0, 1}), g).second.zero());
    CHECK(divrem(P({-1, 1}), g).second.zero());

    CHECK(poly_gcd(P({3, 0, 6}), Poly<Rat>{}) == monic(P({3, 0, 6})));
    CHECK(poly_gcd(P({0, 1, 0, 1}), P({1, 0, 1})) == P({1, 0, 1}));
}

TEST_CASE("gcd divides and is monic on random inputs") {
    for (int t = 0; t < 200; t++) {
        Poly<Rat> a = random_nonzero(6, 8), b = random_nonzero(6, 8);
        Poly<Rat> g = poly_gcd(a, b);
        CHECK(divrem(a, g).second.zero());
        CHECK(divrem(b, g).second.zero());
        CHECK(g.lc() == Rat(1));
    }
}

TEST_CASE("squarefree") {
    CHECK(is_squarefree(P({-1, 0, 1})));
    CHECK_FALSE(is_squarefree(P({1, -2, 1})));
    CHECK(is_squarefree(P({1, -4, 2, 0, 1})));
    CHECK_THROWS_AS((void)is_squarefree(Poly<Rat>{}), Error);
}

TEST_CASE("resultant examples") {
    CHECK(resultant(P({-2, 1}), P({-3, 1})) == Rat(-1));
    CHECK(oracle_resultant(P({-2, 1}), P({-3, 1})) == Rat(-1));
    CHECK(resultant(P({1, 0, 1}), P({1, 0, 1})) == Rat(0));
    CHECK_THROWS_AS((void)resultant(P({1}), Poly<Rat>{}), Error);
}

TEST_CASE("cubic discriminant closed form") {
    // disc(x^3 + a x + b) = -4 a^3 - 27 b^2
    auto closed = [](long a, long b) { return Rat(-4 * a * a * a - 27 * b * b); };
    CHECK(discriminant(P({0, -1, 0, 1})) == closed(-1, 0));
    CHECK(discriminant(P({0, -1, 0, 1})) == Rat(4));
    for (long a = -5; a <= 5; a++)
        for (long b = -5; b <= 5; b++) {
            Poly<Rat> f = P({b, a, 0, 1});
            CHECK(discriminant(f) == closed(a, b));
        }
}

TEST_CASE("subresultant agrees with the determinant route") {
    for (int t = 0; t < 300; t++) {
        Poly<Rat> a = random_nonzero(5, 6), b = random_nonzero(5, 6);
        CHECK(resultant(a, b) == oracle_resultant(a, b));
    }
}

TEST_CASE("resultant multiplicativity") {
    for (int t = 0; t < 100; t++) {
        Poly<Rat> a = random_nonzero(3, 5), b = random_nonzero(3, 5), c = random_nonzero(3, 5);
        CHECK(resultant(a * b, c) == resultant(a, c) * resultant(b, c));
    }
}

TEST_CASE("reduction mod p") {
    FpPoly f = reduce_mod_p(P({-1, 0, 1}), 3);
    REQUIRE(f.deg() == 2);
    CHECK(f.c[0].v == 2);
    CHECK(f.c[1].v == 0);
    CHECK(f.c[2].v == 1);

    Poly<Rat> half(std::vector<Rat>{Rat(0), make_rat(1, 2)});
    CHECK_THROWS_AS((void)reduce_mod_p(half, 2), Error);

    FpPoly g = reduce_mod_p(P({1, 0, -4, 0, 2, 0, 0, 0, 1}), 5);
    REQUIRE(g.deg() == 8);
    CHECK(g.c[0].v == 1);
    CHECK(g.c[2].v == 1);
    CHECK(g.c[4].v == 2);
    CHECK(g.c[8].v == 1);
}

TEST_CASE("reduction is a ring homomorphism") {
    for (int t = 0; t < 100; t++) {
        Poly<Rat> a = random_poly(5, 9), b = random_poly(5, 9);
        for (uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
            CHECK(reduce_mod_p(a * b, p) == reduce_mod_p(a, p) * reduce_mod_p(b, p));
        }
    }
}

TEST_CASE("legendre symbol") {
    CHECK(legendre(0, 7) == 0);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
}

TEST_CASE("legendre matches brute-force squares for p <= 50") {
    for (uint64_t p : primes_up_to(50)) {
        if (p == 2) continue;
        std::vector<bool> sq(p, false);
        for (uint64_t x = 0; x < p; x++) sq[(x * x) % p] = true;
        for (uint64_t a = 0; a < p; a++) {
            int l = legendre(a, p);
            if (a == 0)
                CHECK(l == 0);
            else
                CHECK((l == 1) == sq[a]);
        }
    }
}

TEST_CASE("rationals are canonical and round-trip through strings") {
    Rat q = make_rat(Int(6), Int(-8));
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 4);
    CHECK(rat_str(q) == "-3/4");
    CHECK(rat_str(Rat(7)) == "7");
    std::uniform_int_distribution<long> dn(-10000, 10000), dd(1, 10000);
    for (int t = 0; t < 500; t++) {
        Rat r = make_rat(Int(dn(rng)), Int(dd(rng)));
        CHECK(parse_rat(rat_str(r)) == r);
    }
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
}

TEST_CASE("rational square roots") {
    CHECK(*rat_sqrt(make_rat(Int(9), Int(4))) == make_rat(Int(3), Int(2)));
    CHECK_FALSE(rat_sqrt(Rat(2)).has_value());
    CHECK_FALSE(rat_sqrt(Rat(-4)).has_value());
    CHECK(*rat_sqrt(Rat(0)) == Rat(0));
}

TEST_CASE("sturm real root counts") {
    CHECK(sturm_real_roots(P({1, 0, 1})) == 0);
    CHECK(sturm_real_roots(P({-2, 0, 1})) == 2);
    CHECK(sturm_real_roots(P({-6, 11, -6, 1})) == 3); // (x-1)(x-2)(x-3)
    CHECK(sturm_real_roots(P({0, 0, 1})) == 1);       // double root counted once
    CHECK(sturm_real_roots(P({3, 0, 0, 0, 3})) == 0); // 3x^4 + 3
}

TEST_CASE("primality and factoring") {
    CHECK(is_small_prime(2));
    CHECK(is_small_prime(999983));
    CHECK_FALSE(is_small_prime(1));
    CHECK_FALSE(is_small_prime(999981));
    auto f = factor(Int(-921600));
    Int prod = 1;
    for (auto& [p, e] : f)
        for (int i = 0; i < e; i++) prod *= p;
    CHECK(prod == 921600);
    CHECK(square_root_part(f) == 960);
    CHECK(divisors(factor(Int(12))) == std::vector<Int>({1, 2, 3, 4, 6, 12}));

    // a semiprime beyond the trial-division bound exercises the rho path
    Int big = Int(1000003) * Int(1000033);
    auto bf = factor(big);
    REQUIRE(bf.size() == 2);
    CHECK(bf[0].first == 1000003);
    CHECK(bf[1].first == 1000033);
}

TEST_CASE("binary form basics") {
    // F(X, Z) = X^2 - Z^2 at declared degree 2
    BinForm<Rat> f(2, {Rat(-1), Rat(0), Rat(1)});
    CHECK(f.eval(Rat(3), Rat(1)) == Rat(8));
    CHECK(f.eval(Rat(3), Rat(2)) == Rat(5));
    // homogeneity F(lx, lz) = l^d F(x, z)
    for (int t = 0; t < 50; t++) {
        std::uniform_int_distribution<long> dc(-9, 9);
        BinForm<Rat> g(4, {Rat(dc(rng)), Rat(dc(rng)), Rat(dc(rng)), Rat(dc(rng)), Rat(dc(rng))});
        if (g.zero()) continue;
        Rat l = make_rat(Int(dc(rng) == 0 ? 2 : dc(rng)), Int(3));
        Rat x(dc(rng)), z(dc(rng));
        CHECK(g.eval(l * x, l * z) == pow_k(l, 4) * g.eval(x, z));
    }
    CHECK(reverse_form(f).c[0] == Rat(1));
}

TEST_CASE("monic cubic integer roots") {
    auto r = monic_cubic_integer_roots(Int(-1), Int(0)); // x^3 - x
    CHECK(r.size() == 3);
    auto r2 = monic_cubic_integer_roots(Int(0), Int(-8)); // x^3 - 8
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == 2);
    CHECK(monic_cubic_integer_roots(Int(1), Int(1)).empty());
}
