#pragma once

#include <array>

#include "fnc/field.hpp"

namespace fnc {

using Vec3 = std::array<FieldElement, 3>;
using Mat3 = std::array<std::array<FieldElement, 3>, 3>;

Vec3 cross(const Vec3& a, const Vec3& b);
FieldElement dot(const Vec3& a, const Vec3& b);
bool is_zero(const Vec3& v);
// det of the matrix with rows a, b, c.
FieldElement det3(const Vec3& a, const Vec3& b, const Vec3& c);
FieldElement det(const Mat3& m);

Mat3 identity3(const FieldCtx& ctx);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 inverse(const Mat3& m);  // throws ValidationError when singular
Mat3 scaled(const Mat3& m, const FieldElement& c);

// Scales so the first nonzero entry (row-major) is 1.
Mat3 normalize_projective(const Mat3& m);

Mat3 map(const Mat3& m, const FieldEmbedding& emb);
Vec3 map(const Vec3& v, const FieldEmbedding& emb);

} // namespace fnc
