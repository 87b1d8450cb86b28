#include "qd/mat3.hpp"

#include "qd/error.hpp"

namespace qd {

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            Rat s = 0;
            for (int k = 0; k < 3; k++) s += a.m[i][k] * b.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

bool operator==(const Mat3& a, const Mat3& b) {
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++)
            if (a.m[i][j] != b.m[i][j]) return false;
    return true;
}

Mat3 Mat3::inverse() const {
    Rat d = det();
    if (is_zero(d)) fail(errc::internal, "singular coordinate transformation");
    Mat3 r;
    r.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
    r.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
    r.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
    r.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
    r.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
    r.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
    r.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
    r.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
    r.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    return r;
}

Mat3 projective_normal(const Mat3& a) {
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            int s = sgn(a.m[i][j]);
            if (s > 0) return a;
            if (s < 0) return -a;
        }
    return a;
}

const std::vector<Mat3>& signed_permutations() {
    static const std::vector<Mat3> all = [] {
        std::vector<Mat3> out;
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        const int signsets[8][3] = {{1, 1, 1},   {1, 1, -1},  {1, -1, 1},  {1, -1, -1},
                                    {-1, 1, 1},  {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}};
        for (const auto& perm : perms)
            for (const auto& ss : signsets) {
                Mat3 m;
                for (int i = 0; i < 3; i++) m.m[i][perm[i]] = ss[i];
                out.push_back(m);
            }
        return out;
    }();
    return all;
}

Mat3 swap_axes(int i, int j) {
    Mat3 r = Mat3::identity();
    if (i != j) {
        r.m[i][i] = 0;
        r.m[j][j] = 0;
        r.m[i][j] = 1;
        r.m[j][i] = 1;
    }
    return r;
}

} // namespace qd
