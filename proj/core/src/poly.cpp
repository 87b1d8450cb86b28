#include "qd/poly.hpp"

namespace qd {

namespace {

int sign_at_inf(const Poly<Rat>& p, int dir) {
    // dir = +1 for +infinity, -1 for -infinity
    if (p.zero()) return 0;
    int s = sgn(p.lc());
    if (dir < 0 && (p.deg() & 1)) s = -s;
    return s;
}

int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) v++;
        last = s;
    }
    return v;
}

} // namespace

int sturm_real_roots(const Poly<Rat>& f) {
    if (f.deg() <= 0) return 0;
    Poly<Rat> g = divrem(f, poly_gcd(f, derivative(f))).first; // squarefree part
    std::vector<Poly<Rat>> chain{g, derivative(g)};
    while (!chain.back().zero() && chain.back().deg() > 0) {
        Poly<Rat> r = -divrem(chain[chain.size() - 2], chain.back()).second;
        if (r.zero()) break;
        chain.push_back(r);
    }
    std::vector<int> at_neg, at_pos;
    for (const auto& p : chain) {
        at_neg.push_back(sign_at_inf(p, -1));
        at_pos.push_back(sign_at_inf(p, +1));
    }
    return variations(at_neg) - variations(at_pos);
}

std::vector<Int> monic_cubic_integer_roots(const Int& a, const Int& b) {
    std::vector<Int> roots;
    auto test = [&](const Int& x) {
        if (x * x * x + a * x + b == 0) roots.push_back(x);
    };
    if (b == 0) {
        test(Int(0));
        if (a <= 0 && is_square(-a)) {
            Int s = isqrt(-a);
            if (s != 0) {
                test(s);
                test(-s);
            }
        }
        return roots;
    }
    for (const Int& d : divisors(factor(b))) {
        test(d);
        test(-d);
    }
    return roots;
}

} // namespace qd
