#pragma once

#include <array>
#include <vector>

#include "qd/rational.hpp"

namespace qd {

// Small exact 3x3 matrix over Q, used for coordinate changes of plane quartics.
struct Mat3 {
    std::array<std::array<Rat, 3>, 3> m{};

    static Mat3 identity() {
        Mat3 r;
        for (int i = 0; i < 3; i++) r.m[i][i] = 1;
        return r;
    }

    static Mat3 diag(const Rat& a, const Rat& b, const Rat& c) {
        Mat3 r;
        r.m[0][0] = a;
        r.m[1][1] = b;
        r.m[2][2] = c;
        return r;
    }

    Rat det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    Mat3 inverse() const;

    std::array<Rat, 3> apply(const std::array<Rat, 3>& v) const {
        std::array<Rat, 3> r;
        for (int i = 0; i < 3; i++) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
        return r;
    }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
bool operator==(const Mat3& a, const Mat3& b);

inline Mat3 operator-(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) r.m[i][j] = -a.m[i][j];
    return r;
}

// Projective normalization: a matrix and its negative give the same plane
// transformation; make the first nonzero entry positive.
Mat3 projective_normal(const Mat3& a);

// The 48 signed permutation matrices, identity permutation and all-positive
// signs first, in a fixed deterministic order.
const std::vector<Mat3>& signed_permutations();

// Coordinate swap (axis <-> axis).
Mat3 swap_axes(int i, int j);

} // namespace qd
