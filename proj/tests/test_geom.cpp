#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "fnc/fncurve.hpp"

using namespace fnc;

namespace {

bool collinear_by_det(const ProjPoint& R, std::uint64_t q) {
    return det3(R.v, frobenius(R, q).v, frobenius(R, q * q).v).is_zero();
}

} // namespace

TEST_CASE("plane enumeration") {
    const auto F = FieldCtx::create(2, 6);
    CHECK(enumerate_plane(*F, 2, 1).size() == 7);
    CHECK(enumerate_plane(*F, 2, 2).size() == 21);
    CHECK(enumerate_plane(*F, 2, 3).size() == 73);
    CHECK(enumerate_plane(*F, 4, 1).size() == 21);
    const auto pts = enumerate_plane(*F, 2, 2);
    CHECK(std::set<ProjPoint>(pts.begin(), pts.end()).size() == pts.size());
    CHECK(pts.front() == make_point(*F, 0, 0, 1));
    for (const auto& P : pts) CHECK(field_of_definition(P, 2) <= 2);

    std::map<std::uint32_t, std::size_t> by_degree;
    for (const auto& P : enumerate_plane(*F, 2, 6)) ++by_degree[field_of_definition(P, 2)];
    std::size_t total = 0;
    for (const auto& [d, c] : by_degree) {
        CHECK(6 % d == 0);
        total += c;
    }
    CHECK(total == 4096 + 64 + 1);
    CHECK(by_degree[1] == 7);
    CHECK(by_degree[2] == 21 - 7);
    CHECK(by_degree[3] == 73 - 7);
    CHECK(field_of_definition(make_point(*F, 1, 0, 0), 2) == 1);
}

TEST_CASE("lines and incidence") {
    const auto F = FieldCtx::create(2, 4);
    const auto P = make_point(*F, 1, 0, 0), Q = make_point(*F, 0, 1, 0);
    CHECK(line_through(P, Q) == ProjLine({F->zero(), F->zero(), F->one()}));
    CHECK_THROWS_AS(line_through(P, P), ValidationError);
    CHECK_THROWS_AS(ProjPoint({F->zero(), F->zero(), F->zero()}), ValidationError);

    const auto pts = enumerate_plane(*F, 2, 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto L = line_through(pts[i], pts[j]);
            CHECK(L.contains(pts[i]));
            CHECK(L.contains(pts[j]));
            CHECK(L == line_through(pts[j], pts[i]));
            CHECK(frobenius(L, 2) == line_through(frobenius(pts[i], 2), frobenius(pts[j], 2)));
        }
    }
    // Duality, exhaustive over GF(16): P on L iff L (as a point) on P (as a line).
    const auto all = enumerate_plane(*F, 2, 4);
    const auto lines = enumerate_lines(*F, 2, 4);
    REQUIRE(all.size() == 273);
    REQUIRE(lines.size() == 273);
    std::size_t incidences = 0;
    for (const auto& Pt : all) {
        for (const auto& L : lines) {
            const bool a = L.contains(Pt);
            const bool b = ProjLine(Pt.v).contains(ProjPoint(L.v));
            CHECK(a == b);
            incidences += a;
        }
    }
    CHECK(incidences == 273 * 17);

    const auto L = lines[100], M = lines[200];
    const auto X = intersection(L, M);
    CHECK(L.contains(X));
    CHECK(M.contains(X));
    const auto other = other_point_on_line(L, X);
    CHECK(L.contains(other));
    CHECK_FALSE(other == X);
}

TEST_CASE("F_q-lines") {
    for (auto [p, k] : {std::pair<std::uint32_t, std::uint32_t>{2, 6}, {3, 6}}) {
        const auto F = FieldCtx::create(p, k);
        const std::uint64_t q = p;
        const auto fl = fq_lines(*F, q);
        CHECK(fl.size() == q * q + q + 1);
        for (std::uint32_t j : {1u, 2u, 3u}) {
            for (const auto& L : fl) CHECK(points_on_line(L, q, j).size() == static_cast<std::size_t>(std::pow(q, j)) + 1);
        }
        // Every line over GF(q^2) contains a point over GF(q).
        const auto base = enumerate_plane(*F, q, 1);
        for (const auto& L : enumerate_lines(*F, q, 2)) {
            bool hit = false;
            for (const auto& P : base) hit = hit || L.contains(P);
            CHECK(hit);
        }
    }
}

TEST_CASE("membership in S, two routes") {
    for (std::uint32_t q : {2u, 3u}) {
        const auto F = FieldCtx::create(q, 3);
        const auto base = FieldCtx::create(q, 1);
        const TriPoly d2 = map_coefficients(build_determinant(base, {1, q, std::uint64_t{q} * q}), FieldEmbedding(base, F));
        const auto fl = fq_lines(*F, q);
        const auto pts = enumerate_plane(*F, q, 3);
        CHECK(pts.size() == (q == 2 ? 73u : 757u));
        std::size_t off = 0;
        for (const auto& R : pts) {
            const bool moore = lies_on_fq_line_by_moore(R, d2);
            const bool frob = lies_on_fq_line_by_frobenius(R, q);
            bool on_some_line = false;
            for (const auto& L : fl) on_some_line = on_some_line || L.contains(R);
            CHECK(moore == frob);
            CHECK(moore == on_some_line);
            CHECK(moore == collinear_by_det(R, q));
            CHECK(lies_on_fq_line(R, q, d2) == moore);
            // R, R^q, R^(q^2) collinear iff the line through R and R^q is rational.
            if (field_of_definition(R, q) == 3) {
                const auto L = line_through(R, frobenius(R, q));
                CHECK((field_of_definition(L, q) == 1) == moore);
            }
            off += !moore;
        }
        // Each F_q-line has q^3 + 1 points; the F_q-points lie on q + 1 lines each.
        const std::size_t on_S = (q * q + q + 1) * (q * q * q + 1) - (q * q + q + 1) * (q + 1) + (q * q + q + 1);
        CHECK(off == pts.size() - on_S);
        if (q == 2) CHECK(off > 0);
    }
    // Every point of P^2(GF(4)) lies in S for q = 2.
    const auto F = FieldCtx::create(2, 2);
    for (const auto& R : enumerate_plane(*F, 2, 2)) CHECK(lies_on_fq_line_by_frobenius(R, 2));
}

TEST_CASE("point text") {
    const auto F = FieldCtx::create(2, 2);
    const auto P = parse_point(*F, "(t : 1 : t+1)");
    CHECK(P.to_string() == "(1 : t+1 : t)");
    CHECK(parse_point(*F, "(0:0:t)") == make_point(*F, 0, 0, 1));
    CHECK_THROWS_AS(parse_point(*F, "(1 : 2)"), ValidationError);
    CHECK_THROWS_AS(parse_point(*F, "(0 : 0 : 0)"), ValidationError);
}
