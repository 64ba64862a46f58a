#include "fnc/linalg.hpp"

namespace fnc {

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

FieldElement dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool is_zero(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

FieldElement det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

FieldElement det(const Mat3& m) { return det3(m[0], m[1], m[2]); }

Mat3 identity3(const FieldCtx& ctx) {
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = i == j ? ctx.one() : ctx.zero();
    }
    return m;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    }
    return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) { return {dot(a[0], v), dot(a[1], v), dot(a[2], v)}; }

Mat3 inverse(const Mat3& m) {
    const FieldElement d = det(m);
    if (d.is_zero()) throw ValidationError("matrix is singular");
    const FieldElement di = inv(d);
    // Adjugate: columns of the inverse are cross products of rows.
    const Vec3 c0 = cross(m[1], m[2]);
    const Vec3 c1 = cross(m[2], m[0]);
    const Vec3 c2 = cross(m[0], m[1]);
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        r[i][0] = c0[i] * di;
        r[i][1] = c1[i] * di;
        r[i][2] = c2[i] * di;
    }
    return r;
}

Mat3 scaled(const Mat3& m, const FieldElement& c) {
    Mat3 r = m;
    for (auto& row : r) {
        for (auto& e : row) e *= c;
    }
    return r;
}

Mat3 normalize_projective(const Mat3& m) {
    for (const auto& row : m) {
        for (const auto& e : row) {
            if (!e.is_zero()) return scaled(m, inv(e));
        }
    }
    throw ValidationError("zero matrix");
}

Mat3 map(const Mat3& m, const FieldEmbedding& emb) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) r[i][j] = emb(m[i][j]);
    }
    return r;
}

Vec3 map(const Vec3& v, const FieldEmbedding& emb) { return {emb(v[0]), emb(v[1]), emb(v[2])}; }

} // namespace fnc
