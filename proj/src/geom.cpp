#include "fnc/geom.hpp"

#include <algorithm>
#include <numeric>

namespace fnc {

namespace {

Vec3 normalized(const Vec3& v, const char* what) {
    for (int i = 0; i < 3; ++i) {
        if (!v[i].is_zero()) {
            if (v[i].is_one()) return v;
            const FieldElement s = inv(v[i]);
            return {v[0] * s, v[1] * s, v[2] * s};
        }
    }
    throw ValidationError(std::string(what) + " with all coordinates zero");
}

bool lex_less(const Vec3& a, const Vec3& b) {
    for (int i = 0; i < 3; ++i) {
        if (a[i].code() != b[i].code()) return a[i].code() < b[i].code();
    }
    return false;
}

std::string triple(const Vec3& v) {
    return "(" + v[0].to_string() + " : " + v[1].to_string() + " : " + v[2].to_string() + ")";
}

Vec3 frob3(const Vec3& v, std::uint64_t Q) { return {frobenius(v[0], Q), frobenius(v[1], Q), frobenius(v[2], Q)}; }

std::vector<Vec3> plane_vectors(const FieldCtx& ctx, std::uint64_t q, std::uint32_t j) {
    const auto els = subfield_elements(ctx, q, j);
    std::vector<Vec3> out;
    out.reserve(els.size() * els.size() + els.size() + 1);
    const FieldElement z = ctx.zero(), o = ctx.one();
    out.push_back({z, z, o});
    for (const auto& a : els) out.push_back({z, o, a});
    for (const auto& a : els) {
        for (const auto& b : els) out.push_back({o, a, b});
    }
    return out;
}

} // namespace

ProjPoint::ProjPoint(const Vec3& coords) : v(normalized(coords, "projective point")) {}
ProjLine::ProjLine(const Vec3& coeffs) : v(normalized(coeffs, "line")) {}

bool operator<(const ProjPoint& a, const ProjPoint& b) { return lex_less(a.v, b.v); }
bool operator<(const ProjLine& a, const ProjLine& b) { return lex_less(a.v, b.v); }

std::string ProjPoint::to_string() const { return triple(v); }
std::string ProjLine::to_string() const { return triple(v); }

ProjPoint make_point(const FieldCtx& ctx, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return ProjPoint(Vec3{ctx.from_code(a), ctx.from_code(b), ctx.from_code(c)});
}

ProjPoint parse_point(const FieldCtx& ctx, std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s += c;
    }
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw ValidationError("point must look like (a : b : c): " + std::string(text));
    }
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ':') {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() != 3) throw ValidationError("point needs three coordinates: " + std::string(text));
    return ProjPoint(Vec3{ctx.parse(parts[0]), ctx.parse(parts[1]), ctx.parse(parts[2])});
}

ProjLine line_through(const ProjPoint& P, const ProjPoint& Q) {
    if (P == Q) throw ValidationError("line_through needs two distinct points, got " + P.to_string() + " twice");
    return ProjLine(cross(P.v, Q.v));
}

ProjPoint intersection(const ProjLine& L, const ProjLine& M) {
    if (L == M) throw ValidationError("intersection of a line with itself");
    return ProjPoint(cross(L.v, M.v));
}

ProjPoint other_point_on_line(const ProjLine& L, const ProjPoint& P) {
    const FieldCtx& F = L.ctx();
    for (int i = 0; i < 3; ++i) {
        Vec3 axis{F.zero(), F.zero(), F.zero()};
        axis[i] = F.one();
        const Vec3 c = cross(L.v, axis);
        if (is_zero(c)) continue;
        ProjPoint R(c);
        if (!(R == P)) return R;
    }
    throw ValidationError("no second point found on " + L.to_string());
}

ProjPoint frobenius(const ProjPoint& P, std::uint64_t Q) { return ProjPoint(frob3(P.v, Q)); }
ProjLine frobenius(const ProjLine& L, std::uint64_t Q) { return ProjLine(frob3(L.v, Q)); }

std::vector<ProjPoint> enumerate_plane(const FieldCtx& ctx, std::uint64_t q, std::uint32_t j) {
    std::vector<ProjPoint> out;
    for (const auto& v : plane_vectors(ctx, q, j)) out.emplace_back(v);
    return out;
}

std::vector<ProjLine> enumerate_lines(const FieldCtx& ctx, std::uint64_t q, std::uint32_t j) {
    std::vector<ProjLine> out;
    for (const auto& v : plane_vectors(ctx, q, j)) out.emplace_back(v);
    return out;
}

std::vector<ProjPoint> points_on_line(const ProjLine& L, std::uint64_t q, std::uint32_t j) {
    const FieldCtx& F = L.ctx();
    if (field_of_definition(L, q) > j || j % field_of_definition(L, q) != 0) {
        throw ValidationError("line " + L.to_string() + " is not defined over GF(q^" + std::to_string(j) + ")");
    }
    // Parametrize by two points of L and run over P^1(GF(q^j)).
    const Vec3 zero{F.zero(), F.zero(), F.zero()};
    std::vector<Vec3> basis;
    for (int i = 0; i < 3 && basis.size() < 2; ++i) {
        Vec3 axis = zero;
        axis[i] = F.one();
        const Vec3 c = cross(L.v, axis);
        if (is_zero(c)) continue;
        if (!basis.empty() && is_zero(cross(basis[0], c))) continue;
        basis.push_back(ProjPoint(c).v);
    }
    std::vector<ProjPoint> out;
    out.emplace_back(basis[1]);
    for (const auto& a : subfield_elements(F, q, j)) {
        out.emplace_back(Vec3{basis[0][0] + a * basis[1][0], basis[0][1] + a * basis[1][1], basis[0][2] + a * basis[1][2]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint32_t field_of_definition(const ProjPoint& P, std::uint64_t q) {
    std::uint32_t l = 1;
    for (int i = 0; i < 3; ++i) l = std::lcm(l, subfield_degree(P.v[i], q));
    return l;
}

std::uint32_t field_of_definition(const ProjLine& L, std::uint64_t q) {
    return field_of_definition(ProjPoint(L.v), q);
}

std::vector<ProjLine> fq_lines(const FieldCtx& ctx, std::uint64_t q) { return enumerate_lines(ctx, q, 1); }

bool lies_on_fq_line_by_moore(const ProjPoint& R, const TriPoly& d2) {
    if (&d2.ctx() != &R.ctx()) throw FieldMismatch();
    return d2.eval(R.v).is_zero();
}

bool lies_on_fq_line_by_frobenius(const ProjPoint& R, std::uint64_t q) {
    return det3(R.v, frob3(R.v, q), frob3(R.v, q * q)).is_zero();
}

bool lies_on_fq_line(const ProjPoint& R, std::uint64_t q, const TriPoly& d2) {
    const bool a = lies_on_fq_line_by_moore(R, d2);
    const bool b = lies_on_fq_line_by_frobenius(R, q);
    if (a != b) throw ConsistencyError("F_q-line membership routes disagree at " + R.to_string());
    return a;
}

} // namespace fnc
