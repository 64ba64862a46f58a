#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fnc/fncurve.hpp"

using namespace fnc;

namespace {

using Ctx = std::shared_ptr<const FieldCtx>;

FieldElement random_element(const FieldCtx& F, std::mt19937_64& rng, bool nonzero = false) {
    for (;;) {
        const auto a = F.from_code(rng() % F.size());
        if (!nonzero || !a.is_zero()) return a;
    }
}

TriPoly random_homogeneous(const Ctx& F, std::uint32_t degree, int terms, std::mt19937_64& rng) {
    TriPoly f(F);
    while (f.is_zero()) {
        for (int i = 0; i < terms; ++i) {
            const std::uint32_t a = rng() % (degree + 1);
            const std::uint32_t b = rng() % (degree - a + 1);
            f.add_term(Monomial{a, b, degree - a - b}, random_element(*F, rng, true));
        }
    }
    return f;
}

Vec3 random_vec(const FieldCtx& F, std::mt19937_64& rng) {
    return {random_element(F, rng), random_element(F, rng), random_element(F, rng)};
}

TriPoly var(const Ctx& F, int i) { return TriPoly::variable(F, i); }

} // namespace

TEST_CASE("arithmetic examples") {
    const auto F = FieldCtx::create(3, 1);
    const auto x = var(F, 0), y = var(F, 1), z = var(F, 2);
    CHECK(x * x == TriPoly::monomial(F, {2, 0, 0}, F->one()));
    const TriPoly f = x * y + z * z * z.scaled(F->from_int(2));
    CHECK((f + f.scaled(F->from_int(-1))).is_zero());
    CHECK((f - f).is_zero());
    CHECK(exact_divide(x * x - y * y, x - y) == x + y);
    CHECK_THROWS_AS(exact_divide(x * x + y * y, x + z), NotDivisible);
    CHECK_THROWS_AS(x + TriPoly::variable(FieldCtx::create(3, 2), 0), FieldMismatch);

    const Curve c = build_curve(CurveParams::make(2, 3, 1));
    CHECK(c.D1.homogeneous_degree() == 11u);
    CHECK(c.D2.homogeneous_degree() == 7u);
    CHECK((c.D1 * c.D2).homogeneous_degree() == 18u);
}

TEST_CASE("text form") {
    const auto F = FieldCtx::create(2, 2);
    TriPoly f(F);
    f.add_term({0, 0, 3}, F->parse("t+1"));
    f.add_term({2, 1, 0}, F->one());
    CHECK(f.to_string() == "x^2*y + (t+1)*z^3");
    CHECK(TriPoly(F).to_string() == "0");
}

TEST_CASE("division round trip and remainder criterion") {
    std::mt19937_64 rng(2024);
    const std::vector<Ctx> fields = {FieldCtx::create(2, 1), FieldCtx::create(3, 1), FieldCtx::create(2, 4),
                                     FieldCtx::create(5, 1)};
    int divisible_seen = 0, indivisible_seen = 0;
    for (int iter = 0; iter < 100; ++iter) {
        const Ctx& F = fields[iter % fields.size()];
        const auto f = random_homogeneous(F, 1 + rng() % 6, 1 + rng() % 5, rng);
        const auto g = random_homogeneous(F, 1 + rng() % 5, 1 + rng() % 4, rng);
        const auto fg = f * g;
        CHECK(exact_divide(fg, g) == f);
        CHECK(reduce_mod(fg, g).is_zero());
        const auto [qt, r] = divide(fg, g);
        CHECK(r.is_zero());
        CHECK(qt == f);

        // A perturbed product: the remainder vanishes exactly when division succeeds.
        TriPoly h = fg;
        h.add_term(Monomial{static_cast<std::uint32_t>(*fg.homogeneous_degree()), 0, 0}, F->one());
        if (h.is_zero()) continue;
        const bool zero_rem = reduce_mod(h, g).is_zero();
        bool divides = true;
        try {
            const auto k = exact_divide(h, g);
            CHECK(k * g == h);
        } catch (const NotDivisible&) {
            divides = false;
        }
        CHECK(zero_rem == divides);
        (divides ? divisible_seen : indivisible_seen)++;

        // f = q g + r with no term of r divisible by LT(g).
        const auto [q2, r2] = divide(h, g);
        CHECK(q2 * g + r2 == h);
        for (const auto& [m, c] : r2.terms()) CHECK_FALSE(g.leading_monomial().divides(m));
    }
    CHECK(indivisible_seen > 0);
    const auto F = fields[1];
    const auto small = random_homogeneous(F, 2, 3, rng);
    const auto big = random_homogeneous(F, 5, 4, rng);
    CHECK(reduce_mod(small, big) == small);
}

TEST_CASE("partial derivatives") {
    const auto F2 = FieldCtx::create(2, 1);
    const auto F3 = FieldCtx::create(3, 1);
    CHECK(partial(TriPoly::monomial(F2, {2, 0, 0}, F2->one()), 0).is_zero());
    CHECK(partial(TriPoly::monomial(F3, {3, 0, 0}, F3->one()), 0).is_zero());
    CHECK(partial(TriPoly::monomial(F2, {2, 0, 1}, F2->one()), 0).is_zero());
    CHECK(partial(TriPoly::monomial(F3, {2, 0, 1}, F3->one()), 0) == TriPoly::monomial(F3, {1, 0, 1}, F3->from_int(2)));

    std::mt19937_64 rng(5);
    for (const auto& F : {F3, FieldCtx::create(2, 3), FieldCtx::create(5, 1)}) {
        for (int i = 0; i < 30; ++i) {
            const auto f = random_homogeneous(F, 1 + rng() % 7, 4, rng);
            const auto g = random_homogeneous(F, 1 + rng() % 7, 4, rng);
            for (int v = 0; v < 3; ++v) {
                CHECK(partial(f * g, v) == partial(f, v) * g + f * partial(g, v));
                if (f.homogeneous_degree() == g.homogeneous_degree()) CHECK(partial(f + g, v) == partial(f, v) + partial(g, v));
            }
        }
    }
}

TEST_CASE("Euler identity on the (3,1,3) curve") {
    const Curve c = build_curve(CurveParams::make(3, 3, 1));
    REQUIRE(c.F.homogeneous_degree() == 18u);
    const auto& F = c.base;
    const TriPoly lhs = var(F, 0) * partial(c.F, 0) + var(F, 1) * partial(c.F, 1) + var(F, 2) * partial(c.F, 2);
    CHECK(lhs.is_zero());
    // With the degree prime to p the identity has a nonzero right side.
    std::mt19937_64 rng(9);
    const auto G5 = FieldCtx::create(5, 1);
    const auto f = random_homogeneous(G5, 3, 6, rng);
    const TriPoly e = var(G5, 0) * partial(f, 0) + var(G5, 1) * partial(f, 1) + var(G5, 2) * partial(f, 2);
    CHECK(e == f.scaled(G5->from_int(3)));
}

TEST_CASE("restriction to lines") {
    const auto F3 = FieldCtx::create(3, 1);
    const auto x = var(F3, 0), y = var(F3, 1), z = var(F3, 2);
    const auto G = restrict_to_line(x * x + y * y + z * z, {F3->one(), F3->zero(), F3->zero()},
                                    {F3->zero(), F3->one(), F3->zero()});
    CHECK(G.degree() == 2);
    CHECK(G.coeffs() == std::vector<FieldElement>{F3->one(), F3->zero(), F3->one()});
    CHECK_THROWS_AS(restrict_to_line(x, {F3->one(), F3->one(), F3->zero()}, {F3->from_int(2), F3->from_int(2), F3->zero()}),
                    ValidationError);

    const Curve c = build_curve(CurveParams::make(2, 3, 2));
    const auto& B = *c.base;
    for (const auto& L : fq_lines(B, 2)) {
        const auto pts = points_on_line(L, 2, 1);
        const auto R = restrict_to_line(c.F, pts[0].v, pts[1].v);
        CHECK(R.degree() == 6);
        CHECK_FALSE(R.is_zero());
    }

    std::mt19937_64 rng(77);
    const auto F16 = FieldCtx::create(2, 4);
    for (int i = 0; i < 100; ++i) {
        const auto f = random_homogeneous(F16, 1 + rng() % 8, 5, rng);
        Vec3 b = random_vec(*F16, rng), d = random_vec(*F16, rng);
        if (is_zero(cross(b, d))) continue;
        const auto Gf = restrict_to_line(f, b, d);
        const auto s = random_element(*F16, rng), t = random_element(*F16, rng);
        Vec3 pt;
        for (int k = 0; k < 3; ++k) pt[k] = s * b[k] + t * d[k];
        CHECK(Gf.eval(s, t) == f.eval(pt));
        // Zero of f on the line iff positive vanishing order there.
        if (!(s.is_zero() && t.is_zero()) && !Gf.is_zero()) CHECK((vanish_order(Gf, s, t) >= 1) == f.eval(pt).is_zero());
    }
}

TEST_CASE("binary forms: orders and roots") {
    const auto F3 = FieldCtx::create(3, 1);
    const auto o = F3->one(), z0 = F3->zero();
    const BinaryForm s2t(F3.get(), {z0, o, z0, z0});
    CHECK(vanish_order(s2t, z0, o) == 2);
    CHECK(vanish_order(s2t, o, z0) == 1);
    CHECK(vanish_order(s2t, o, o) == 0);
    CHECK_THROWS_AS(vanish_order(BinaryForm::zero(F3.get(), 3), o, o), InfiniteOrder);

    const BinaryForm diff(F3.get(), {o, z0, F3->from_int(-1)});
    const auto rr = squarefree_and_roots(diff);
    CHECK(rr.squarefree);
    REQUIRE(rr.roots.size() == 2);
    CHECK(rr.roots[0].s == o);
    CHECK(rr.roots[0].t == o);
    CHECK(rr.roots[1].t == F3->from_int(2));
    for (const auto& r : rr.roots) CHECK(r.multiplicity == 1);

    const BinaryForm sq(F3.get(), {o, z0, z0});
    const auto rs = squarefree_and_roots(sq);
    CHECK_FALSE(rs.squarefree);
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.roots[0].s.is_zero());
    CHECK(rs.roots[0].multiplicity == 2);

    // Random forms: root multiplicities never exceed the degree, and the
    // count reaches the degree after dividing out over a splitting field.
    std::mt19937_64 rng(3);
    const auto F = FieldCtx::create(2, 6);
    for (int i = 0; i < 60; ++i) {
        const std::uint32_t d = 1 + rng() % 6;
        std::vector<FieldElement> cs(d + 1);
        for (auto& c : cs) c = random_element(*F, rng);
        if (cs[0].is_zero() && cs[d].is_zero()) cs[0] = F->one();
        const BinaryForm G(F.get(), cs);
        const auto r = squarefree_and_roots(G, 2, 1);
        std::uint32_t total = 0;
        for (const auto& root : r.roots) {
            CHECK(root.multiplicity == vanish_order(G, root.s, root.t));
            CHECK(in_subfield(root.t, 2, 1));
            total += root.multiplicity;
        }
        CHECK(total == r.found_degree);
        CHECK(total <= d);
        const auto full = squarefree_and_roots(G);
        CHECK(full.found_degree <= d);
        const auto sd = splitting_degree(G, 12);
        if (full.found_degree == d) CHECK(sd == 1);
        else CHECK(sd != 1);
        CHECK(full.squarefree == is_squarefree(G));
    }
}

TEST_CASE("linear substitution") {
    std::mt19937_64 rng(1);
    const auto F = FieldCtx::create(3, 2);
    for (int i = 0; i < 30; ++i) {
        const auto f = random_homogeneous(F, 1 + rng() % 5, 4, rng);
        Mat3 A;
        for (auto& row : A) row = random_vec(*F, rng);
        const auto fa = compose_linear(f, A);
        const Vec3 v = random_vec(*F, rng);
        CHECK(fa.eval(v) == f.eval(A * v));
    }
}
