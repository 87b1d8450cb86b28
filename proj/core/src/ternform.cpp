#include "qd/ternform.hpp"

namespace qd {

TernForm<Rat> substitute(const TernForm<Rat>& f, const Mat3& M) {
    // Rows of M give the images of X, Y, Z as linear forms.
    Rat model(0);
    std::vector<TernForm<Rat>> lin(3, TernForm<Rat>(1, model));
    for (int v = 0; v < 3; v++) {
        lin[(size_t)v].at(1, 0) = M.m[v][0];
        lin[(size_t)v].at(0, 1) = M.m[v][1];
        lin[(size_t)v].at(0, 0) = M.m[v][2];
    }
    // power tables up to degree d
    std::vector<std::vector<TernForm<Rat>>> pw(3);
    for (int v = 0; v < 3; v++) {
        pw[(size_t)v].push_back(TernForm<Rat>(0, model));
        pw[(size_t)v][0].at(0, 0) = 1;
        for (int e = 1; e <= f.d; e++)
            pw[(size_t)v].push_back(pw[(size_t)v].back() * lin[(size_t)v]);
    }
    TernForm<Rat> out(f.d, model);
    f.for_each([&](int i, int j, int k, const Rat& co) {
        if (is_zero(co)) return;
        TernForm<Rat> term = pw[0][(size_t)i] * pw[1][(size_t)j] * pw[2][(size_t)k];
        out = out + (co * term);
    });
    return out;
}

TernForm<Fp> reduce_mod_p(const TernForm<Rat>& f, uint64_t p) {
    TernForm<Fp> out(f.d, Fp{0, p});
    for (size_t i = 0; i < f.c.size(); i++) out.c[i] = mod_p(f.c[i], p);
    return out;
}

} // namespace qd
