#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fnc/fncurve.hpp"

using namespace fnc;

namespace {

using Ctx = std::shared_ptr<const FieldCtx>;

TriPoly linear_form(const Ctx& F, const Vec3& c) {
    TriPoly f(F);
    f.add_term({1, 0, 0}, c[0]);
    f.add_term({0, 1, 0}, c[1]);
    f.add_term({0, 0, 1}, c[2]);
    return f;
}

// x -> x, y -> gamma x + mu y + beta z, z -> z.
Mat3 shear(const FieldElement& gamma, const FieldElement& mu, const FieldElement& beta) {
    const FieldCtx& F = gamma.ctx();
    Mat3 A = identity3(F);
    A[1] = {gamma, mu, beta};
    return A;
}

FieldElement random_element(const FieldCtx& F, std::mt19937_64& rng) { return F.from_code(rng() % F.size()); }

// Smooth points of the curve over the ambient field, gathered from the
// roots of F on random lines.
std::vector<ProjPoint> random_smooth_points(const AmbientCurve& ac, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const FieldCtx& F = *ac.ctx;
    std::vector<ProjPoint> out;
    while (out.size() < count) {
        const Vec3 b{random_element(F, rng), random_element(F, rng), random_element(F, rng)};
        const Vec3 d{random_element(F, rng), random_element(F, rng), random_element(F, rng)};
        if (is_zero(cross(b, d))) continue;
        const auto G = restrict_to_line(ac.F, b, d);
        if (G.is_zero()) continue;
        for (const auto& r : squarefree_and_roots(G).roots) {
            Vec3 v;
            for (int k = 0; k < 3; ++k) v[k] = r.s * b[k] + r.t * d[k];
            const ProjPoint R(v);
            if (!ac.is_singular(R) && out.size() < count) out.push_back(R);
        }
    }
    return out;
}

// F_x(R) R_x^(q^N) + F_y(R) R_y^(q^N) + F_z(R) R_z^(q^N)
FieldElement tangent_at_frobenius(const AmbientCurve& ac, const ProjPoint& R, std::uint32_t N) {
    const auto RN = frobenius(R, ac.params.q_pow(N));
    FieldElement s = ac.ctx->zero();
    for (int i = 0; i < 3; ++i) s += ac.grad(i).eval(R.v) * RN[i];
    return s;
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(CurveParams::make(2, 3, 1));
    CHECK_THROWS_AS(CurveParams::make(2, 4, 2), ValidationError);
    CHECK_THROWS_AS(CurveParams::make(2, 2, 1), ValidationError);
    CHECK_THROWS_AS(CurveParams::make(2, 3, 3), ValidationError);
    CHECK_THROWS_AS(CurveParams::make(2, 3, 0), ValidationError);
    CHECK_THROWS_AS(CurveParams::make(6, 3, 1), ValidationError);
    const auto p = CurveParams::make(4, 3, 2);
    CHECK(p.p == 2);
    CHECK(p.e == 2);
    CHECK(p.degree() == 64 + 16 - 16 - 4);
    CHECK(p.to_string() == "(n,m,q)=(3,2,4)");
}

TEST_CASE("determinants") {
    for (std::uint32_t q : {2u, 3u}) {
        const Ctx F = FieldCtx::create(q, 1);
        const TriPoly d2 = build_determinant(F, {1, q, std::uint64_t{q} * q});
        CHECK(d2.homogeneous_degree() == 1 + q + q * q);
        CHECK(d2.term_count() == 6);
        TriPoly prod = TriPoly::constant(F, F->one());
        for (const auto& L : fq_lines(*F, q)) prod = prod * linear_form(F, L.v);
        REQUIRE(prod.homogeneous_degree() == d2.homogeneous_degree());
        const FieldElement lambda = d2.leading_coeff() / prod.coeff(d2.leading_monomial());
        CHECK(d2 == prod.scaled(lambda));
    }
    const Ctx F2 = FieldCtx::create(2, 1);
    CHECK(build_determinant(F2, {1, 2, 8}).homogeneous_degree() == 11u);
}

TEST_CASE("construction") {
    const std::vector<std::array<std::uint32_t, 4>> cases = {
        {3, 1, 2, 4}, {3, 2, 2, 6}, {4, 1, 2, 12}, {3, 1, 3, 18}, {4, 3, 2, 18}};
    for (const auto& [n, m, q, d] : cases) {
        const Curve c = build_curve(CurveParams::make(q, n, m));
        CAPTURE(c.params.to_string());
        CHECK(c.F.homogeneous_degree() == d);
        CHECK(c.D2 * c.F == c.D1);
        const AmbientCurve ac = make_ambient(c, default_work_ext(c.params));
        for (const auto& [mono, coef] : ac.F.terms()) CHECK(in_subfield(coef, q, 1));
        CHECK(ac.F.term_count() == c.F.term_count());
    }
    CHECK(default_work_ext(CurveParams::make(2, 3, 1)) == 6);
    CHECK(default_work_ext(CurveParams::make(2, 4, 1)) == 12);
    CHECK(default_work_ext(CurveParams::make(3, 3, 1)) == 6);
}

TEST_CASE("the (3,1,2) quartic") {
    const Curve c = build_curve(CurveParams::make(2, 3, 1));
    const Ctx& F = c.base;
    const auto x = TriPoly::variable(F, 0), y = TriPoly::variable(F, 1), z = TriPoly::variable(F, 2);
    const auto u = x * x + x * z, v = y * y + y * z;
    const TriPoly expected = u * u + u * v + v * v + z * z * z * z;
    CHECK(c.F == expected.scaled(c.F.leading_coeff() / expected.leading_coeff()));
}

TEST_CASE("Frobenius nonclassicality") {
    const Curve c312 = build_curve(CurveParams::make(2, 3, 1));
    CHECK(check_frobenius_nonclassical(c312, 3));
    CHECK(check_frobenius_nonclassical(c312, 1));
    const Curve c322 = build_curve(CurveParams::make(2, 3, 2));
    CHECK(check_frobenius_nonclassical(c322, 3));
    CHECK(check_frobenius_nonclassical(c322, 2));
    CHECK_FALSE(check_frobenius_nonclassical(c322, 4));

    const AmbientCurve a312 = make_ambient(c312, 6);
    for (const auto& R : random_smooth_points(a312, 200, 1)) {
        CHECK(tangent_at_frobenius(a312, R, 3).is_zero());
        CHECK(tangent_at_frobenius(a312, R, 1).is_zero());
    }
    const AmbientCurve a322 = make_ambient(c322, 12);
    bool witness = false;
    for (const auto& R : random_smooth_points(a322, 200, 2)) {
        CHECK(tangent_at_frobenius(a322, R, 3).is_zero());
        CHECK(tangent_at_frobenius(a322, R, 2).is_zero());
        witness = witness || !tangent_at_frobenius(a322, R, 4).is_zero();
    }
    CHECK(witness);
}

TEST_CASE("linear action") {
    for (auto [q, n, m] : {std::array<std::uint32_t, 3>{2, 3, 1}, {2, 3, 2}, {3, 3, 1}, {3, 3, 2}}) {
        const Curve c = build_curve(CurveParams::make(q, n, m));
        const FieldCtx& F = *c.base;
        CAPTURE(c.params.to_string());
        CHECK(stabilizes(c.F, identity3(F)) == F.one());
        std::vector<std::pair<Mat3, FieldElement>> gens;
        for (const auto& g : F.elements()) {
            for (const auto& b : F.elements()) {
                for (const auto& mu : F.elements()) {
                    if (mu.is_zero()) continue;
                    const Mat3 A = shear(g, mu, b);
                    const auto lambda = stabilizes(c.F, A);
                    REQUIRE(lambda.has_value());
                    CHECK(pgl_transform(c.F, A) == c.F.scaled(*lambda));
                    gens.emplace_back(A, *lambda);
                }
            }
        }
        CHECK(gens.size() == q * q * (q - 1));
        for (const auto& [A, la] : gens) {
            for (const auto& [B, lb] : gens) CHECK(stabilizes(c.F, A * B) == la * lb);
        }
    }
    const Curve c = build_curve(CurveParams::make(2, 3, 1));
    Mat3 sing = identity3(*c.base);
    sing[2] = sing[0];
    CHECK_THROWS_AS(pgl_transform(c.F, sing), ValidationError);
}

TEST_CASE("a random matrix over GF(4) does not stabilize the quartic") {
    const Curve c = build_curve(CurveParams::make(2, 3, 1));
    const AmbientCurve ac = make_ambient(c, 2);
    const FieldCtx& F = *ac.ctx;
    std::mt19937_64 rng(4);
    for (int tries = 0; tries < 100; ++tries) {
        Mat3 A;
        for (auto& row : A) row = {random_element(F, rng), random_element(F, rng), random_element(F, rng)};
        if (det(A).is_zero()) continue;
        if (stabilizes(ac.F, A)) continue;
        // Two monomials m1, m2 with f(m1) g(m2) != f(m2) g(m1) rule out g = lambda f.
        const TriPoly g = pgl_transform(ac.F, A);
        std::vector<Monomial> support;
        for (const auto& [mono, coef] : ac.F.terms()) support.push_back(mono);
        for (const auto& [mono, coef] : g.terms()) support.push_back(mono);
        bool found = false;
        for (const auto& m1 : support) {
            for (const auto& m2 : support) {
                if (!(ac.F.coeff(m1) * g.coeff(m2) == ac.F.coeff(m2) * g.coeff(m1))) found = true;
            }
        }
        CHECK(found);
        return;
    }
    FAIL("no non-stabilizing matrix found");
}

TEST_CASE("point counts") {
    const Curve c = build_curve(CurveParams::make(2, 3, 1));
    const AmbientCurve ac = make_ambient(c, 6);
    const auto x = TriPoly::variable(ac.ctx, 0), y = TriPoly::variable(ac.ctx, 1), z = TriPoly::variable(ac.ctx, 2);
    const auto u = x * x + x * z, v = y * y + y * z;
    const TriPoly quartic = u * u + u * v + v * v + z * z * z * z;
    for (std::uint32_t j : {1u, 2u, 3u, 6u}) {
        std::uint64_t direct = 0;
        for (const auto& P : enumerate_plane(*ac.ctx, 2, j)) direct += quartic.eval(P.v).is_zero();
        CHECK(count_points(ac, j) == direct);
        CHECK(count_points(ac, j, 4) == direct);
    }
    CHECK(count_points(ac, 1) == 0);
    // Points over GF(2^2) are among those over GF(2^6).
    CHECK(count_points(ac, 2) <= count_points(ac, 6));

    const Curve c2 = build_curve(CurveParams::make(2, 3, 2));
    const AmbientCurve a2 = make_ambient(c2, 6);
    CHECK(count_points(a2, 1) == 7);
    CHECK(count_points(a2, 3, 3) == count_points(a2, 3, 1));
}
