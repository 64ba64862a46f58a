#pragma once

// Points and lines of the projective plane over a subfield of one ambient
// field GF(p^K). Subfields are addressed as GF(q^j) with q^j | p^K.

#include <string>
#include <string_view>
#include <vector>

#include "fnc/linalg.hpp"
#include "fnc/poly.hpp"

namespace fnc {

// Coordinates scaled so the first nonzero one is 1.
struct ProjPoint {
    Vec3 v;

    ProjPoint() = default;
    explicit ProjPoint(const Vec3& coords);  // throws ValidationError on (0, 0, 0)

    const FieldCtx& ctx() const { return v[0].ctx(); }
    const FieldElement& operator[](int i) const { return v[i]; }
    std::string to_string() const;

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.v == b.v; }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b);
};

// The line a*x + b*y + c*z = 0, stored as (a : b : c).
struct ProjLine {
    Vec3 v;

    ProjLine() = default;
    explicit ProjLine(const Vec3& coeffs);

    const FieldCtx& ctx() const { return v[0].ctx(); }
    const FieldElement& operator[](int i) const { return v[i]; }
    std::string to_string() const;
    bool contains(const ProjPoint& P) const { return dot(v, P.v).is_zero(); }

    friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.v == b.v; }
    friend bool operator<(const ProjLine& a, const ProjLine& b);
};

ProjPoint make_point(const FieldCtx& ctx, std::uint64_t a, std::uint64_t b, std::uint64_t c);

// "(a : b : c)" with polynomial-basis coordinates; spaces optional.
ProjPoint parse_point(const FieldCtx& ctx, std::string_view text);

ProjLine line_through(const ProjPoint& P, const ProjPoint& Q);  // throws when P == Q
ProjPoint intersection(const ProjLine& L, const ProjLine& M);   // throws when L == M

// A point of L other than P, taken from L's meets with the coordinate lines.
ProjPoint other_point_on_line(const ProjLine& L, const ProjPoint& P);

ProjPoint frobenius(const ProjPoint& P, std::uint64_t Q);
ProjLine frobenius(const ProjLine& L, std::uint64_t Q);

// All q^(2j) + q^j + 1 points of P^2(GF(q^j)) inside ctx, ordered
// (0:0:1), (0:1:a), (1:a:b) with a, b in code order.
std::vector<ProjPoint> enumerate_plane(const FieldCtx& ctx, std::uint64_t q, std::uint32_t j);
// The same enumeration read as line coordinates.
std::vector<ProjLine> enumerate_lines(const FieldCtx& ctx, std::uint64_t q, std::uint32_t j);

// The q^j + 1 points of L over GF(q^j); L must be defined over that field.
std::vector<ProjPoint> points_on_line(const ProjLine& L, std::uint64_t q, std::uint32_t j);

// Smallest j with P^(q^j) = P.
std::uint32_t field_of_definition(const ProjPoint& P, std::uint64_t q);
std::uint32_t field_of_definition(const ProjLine& L, std::uint64_t q);

std::vector<ProjLine> fq_lines(const FieldCtx& ctx, std::uint64_t q);

// Membership in the union S of the F_q-lines, two ways.
//   by_moore: D2(R) = 0 for D2 = det[x, x^q, x^(q^2); ...] (built in R's field).
//   by_frobenius: det(R, R^q, R^(q^2)) = 0.
bool lies_on_fq_line_by_moore(const ProjPoint& R, const TriPoly& d2);
bool lies_on_fq_line_by_frobenius(const ProjPoint& R, std::uint64_t q);
// Both routes; throws ConsistencyError if they disagree.
bool lies_on_fq_line(const ProjPoint& R, std::uint64_t q, const TriPoly& d2);

} // namespace fnc
