#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fnc/local.hpp"

using namespace fnc;

namespace {

AmbientCurve ambient(std::uint64_t q, std::uint32_t n, std::uint32_t m) {
    const Curve c = build_curve(CurveParams::make(q, n, m));
    return make_ambient(c, default_work_ext(c.params));
}

FieldElement random_element(const FieldCtx& F, std::mt19937_64& rng) { return F.from_code(rng() % F.size()); }

ProjLine random_line_through(const ProjPoint& Q, std::mt19937_64& rng) {
    const FieldCtx& F = Q.ctx();
    for (;;) {
        const Vec3 v{random_element(F, rng), random_element(F, rng), random_element(F, rng)};
        if (is_zero(v)) continue;
        const ProjPoint R(v);
        if (!(R == Q)) return line_through(Q, R);
    }
}

std::vector<ProjPoint> singular_off_S(const AmbientCurve& ac, std::uint32_t j) {
    std::vector<ProjPoint> out;
    for (const auto& P : enumerate_plane(*ac.ctx, ac.q(), j)) {
        if (ac.is_singular(P) && !ac.in_S(P)) out.push_back(P);
    }
    return out;
}

} // namespace

TEST_CASE("multiplicities") {
    const AmbientCurve a322 = ambient(2, 3, 2);
    for (const auto& P : enumerate_plane(*a322.ctx, 2, 1)) {
        REQUIRE(a322.on_curve(P));
        CHECK(multiplicity_at(a322, P) == 2);
        for (int pivot = 0; pivot < 3; ++pivot) {
            if (!P[pivot].is_zero()) CHECK(multiplicity_at(a322, P, pivot) == 2);
        }
    }
    CHECK_THROWS_AS(multiplicity_at(a322, make_point(*a322.ctx, 1, 0, 0), 1), ValidationError);

    const AmbientCurve a412 = ambient(2, 4, 1);
    const auto sing = singular_off_S(a412, 3);
    CHECK(sing.size() == 24);
    for (const auto& P : sing) CHECK(multiplicity_at(a412, P) == 2);

    const AmbientCurve a312 = ambient(2, 3, 1);
    for (const auto& P : enumerate_plane(*a312.ctx, 2, 1)) {
        CHECK_FALSE(a312.on_curve(P));
        CHECK_THROWS_AS(multiplicity_at(a312, P), NotOnCurve);
    }
    std::size_t smooth = 0;
    for (const auto& P : enumerate_plane(*a312.ctx, 2, 3)) {
        if (!a312.on_curve(P)) continue;
        CHECK(multiplicity_at(a312, P) == 1);
        for (int pivot = 0; pivot < 3; ++pivot) {
            if (!P[pivot].is_zero()) CHECK(multiplicity_at(a312, P, pivot) == 1);
        }
        ++smooth;
    }
    CHECK(smooth > 0);
}

TEST_CASE("tangent cones") {
    const AmbientCurve a322 = ambient(2, 3, 2);
    for (const auto& P : enumerate_plane(*a322.ctx, 2, 1)) {
        const auto tc = tangent_cone_at(a322, P);
        CHECK(tc.multiplicity == 2);
        CHECK(tc.squarefree);
        CHECK(tc.split);
        REQUIRE(tc.lines.size() == 2);
        for (const auto& cl : tc.lines) {
            CHECK(cl.line.contains(P));
            CHECK(cl.cone_multiplicity == 1);
            CHECK(intersection_multiplicity(a322, cl.line, P) == 6);
        }
    }

    const AmbientCurve a412 = ambient(2, 4, 1);
    for (const auto& P : singular_off_S(a412, 3)) {
        const auto tc = tangent_cone_at(a412, P);
        CHECK_FALSE(tc.squarefree);
        REQUIRE(tc.lines.size() == 1);
        CHECK(tc.lines[0].cone_multiplicity == 2);
        CHECK(intersection_multiplicity(a412, tc.lines[0].line, P) == 3);
    }

    // At a smooth point the cone is the gradient line.
    const AmbientCurve a312 = ambient(2, 3, 1);
    for (const auto& P : enumerate_plane(*a312.ctx, 2, 3)) {
        if (!a312.on_curve(P)) continue;
        const auto tc = tangent_cone_at(a312, P);
        REQUIRE(tc.lines.size() == 1);
        const ProjLine grad({a312.Fx.eval(P.v), a312.Fy.eval(P.v), a312.Fz.eval(P.v)});
        CHECK(tc.lines[0].line == grad);
        CHECK(intersection_multiplicity(a312, grad, P) >= 2);
    }
}

TEST_CASE("intersection multiplicity") {
    const AmbientCurve a322 = ambient(2, 3, 2);
    const auto P = make_point(*a322.ctx, 1, 0, 0), Q = make_point(*a322.ctx, 0, 1, 0);
    const auto L = line_through(P, Q);
    CHECK_THROWS_AS(intersection_multiplicity(a322, L, make_point(*a322.ctx, 0, 0, 1)), ValidationError);

    std::mt19937_64 rng(8);
    // Off-curve points meet every line with multiplicity 0.
    const AmbientCurve a312 = ambient(2, 3, 1);
    const auto off = make_point(*a312.ctx, 1, 0, 0);
    CHECK(intersection_multiplicity(a312, random_line_through(off, rng), off) == 0);

    // Bezout on random lines whose restriction splits.
    for (const AmbientCurve* ac : {&a312, &a322}) {
        int split_lines = 0;
        for (int i = 0; i < 200 && split_lines < 40; ++i) {
            const Vec3 b{random_element(*ac->ctx, rng), random_element(*ac->ctx, rng), random_element(*ac->ctx, rng)};
            const Vec3 d{random_element(*ac->ctx, rng), random_element(*ac->ctx, rng), random_element(*ac->ctx, rng)};
            if (is_zero(cross(b, d))) continue;
            const ProjLine line(cross(b, d));
            const auto G = restrict_to_line(ac->F, b, d);
            const auto roots = squarefree_and_roots(G);
            if (roots.found_degree != ac->degree()) continue;
            ++split_lines;
            std::uint32_t total = 0;
            for (const auto& r : roots.roots) {
                Vec3 v;
                for (int k = 0; k < 3; ++k) v[k] = r.s * b[k] + r.t * d[k];
                const ProjPoint R(v);
                const auto I = intersection_multiplicity(*ac, line, R);
                CHECK(I == r.multiplicity);
                if (!ac->is_singular(R)) CHECK(multiplicity_at(*ac, R) == 1);
                total += I;
            }
            CHECK(total == ac->degree());
        }
        CHECK(split_lines > 0);
    }

    // m(Q) <= I(L, Q), with equality off the tangents.
    for (const auto& S : enumerate_plane(*a322.ctx, 2, 1)) {
        const auto tc = tangent_cone_at(a322, S);
        for (int i = 0; i < 30; ++i) {
            const auto M = random_line_through(S, rng);
            const auto I = intersection_multiplicity(a322, M, S);
            CHECK(I >= 2);
            bool tangent = false;
            for (const auto& cl : tc.lines) tangent = tangent || cl.line == M;
            if (!tangent) CHECK(I == 2);
        }
    }
}

TEST_CASE("case table") {
    const auto p = CurveParams::make(2, 5, 2);
    CHECK(classify_singular(p, false, false) == SingularCase::a_i);
    CHECK(classify_singular(p, true, false) == SingularCase::a_ii);
    CHECK(classify_singular(p, true, true) == SingularCase::a_iii);
    const auto e = expected_for(p, SingularCase::a_iii);
    CHECK(e.multiplicity == 2);
    CHECK(e.ordinary);
    CHECK(e.tangent_count == 2);
    CHECK(e.tangent_imult == 30);
    CHECK(expected_for(p, SingularCase::a_i).multiplicity == 4);
    CHECK(expected_for(p, SingularCase::a_i).tangent_imult == 5);
    CHECK(expected_for(p, SingularCase::a_ii).multiplicity == 3);
    CHECK(expected_for(p, SingularCase::a_ii).tangent_imult == 4);

    const auto p3 = CurveParams::make(3, 3, 1);
    CHECK(classify_singular(p3, false, false) == SingularCase::b_i);
    CHECK(classify_singular(p3, true, false) == SingularCase::b_ii);
    CHECK(expected_for(p3, SingularCase::b_ii).multiplicity == 2);
    CHECK(expected_for(p3, SingularCase::b_ii).tangent_imult == 3);
    CHECK(classify_singular(CurveParams::make(2, 4, 1), false, false) == SingularCase::c);
    CHECK(case_label(SingularCase::a_iii) == "a-iii");
}

TEST_CASE("singular census") {
    struct Want {
        std::uint64_t q;
        std::uint32_t n, m;
        std::size_t count;
    };
    for (const auto& w : {Want{2, 3, 1, 0}, Want{2, 3, 2, 7}, Want{3, 3, 1, 78}, Want{2, 4, 1, 24}, Want{2, 4, 3, 7}}) {
        const AmbientCurve ac = ambient(w.q, w.n, w.m);
        CAPTURE(ac.params.to_string());
        const auto rep = find_singular_points(ac, w.n - 1, 2);
        CHECK(rep.match());
        CHECK(rep.found_count == w.count);
        CHECK(rep.records.size() == w.count);
        for (const auto& r : rep.records) {
            CHECK(r.multiplicity >= 2);
            CHECK(r.label == classify_singular(ac.params, r.in_S, r.in_base_plane));
            CHECK(r.ordinary == (r.tangents.size() == r.multiplicity));
            const auto e = expected_for(ac.params, r.label);
            CHECK(r.multiplicity == e.multiplicity);
            CHECK(r.tangents.size() == e.tangent_count);
            for (const auto& t : r.tangents) CHECK(t.imult == e.tangent_imult);
        }
        CHECK(find_singular_points(ac, w.n - 1, 1).found_count == rep.found_count);
    }
    const AmbientCurve a322 = ambient(2, 3, 2);
    CHECK(find_singular_points(a322, 2).match());
    const AmbientCurve a412 = ambient(2, 4, 1);
    CHECK_THROWS_AS(find_singular_points(a412, 2), ValidationError);
}
