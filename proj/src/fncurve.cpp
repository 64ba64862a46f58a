#include "fnc/fncurve.hpp"

#include <atomic>
#include <numeric>
#include <thread>

namespace fnc {

CurveParams CurveParams::make(std::uint64_t q, std::uint32_t n, std::uint32_t m) {
    CurveParams c;
    const auto [p, e] = prime_power(q);
    c.q = q;
    c.n = n;
    c.m = m;
    c.p = p;
    c.e = e;
    if (n < 3) throw ValidationError("n must be at least 3");
    if (m < 1 || m >= n) throw ValidationError("m must satisfy 1 <= m < n");
    if (std::gcd(n, m) != 1) {
        throw ValidationError("gcd(n, m) must be 1, got gcd(" + std::to_string(n) + ", " + std::to_string(m) +
                              ") = " + std::to_string(std::gcd(n, m)));
    }
    // D1 has degree 1 + q^m + q^n; keep exponents well inside 32 bits.
    long double qn = 1;
    for (std::uint32_t i = 0; i < n; ++i) qn *= static_cast<long double>(q);
    if (qn > 1e9L) throw ValidationError("q^n too large for this tool");
    return c;
}

std::uint64_t CurveParams::q_pow(std::uint32_t k) const {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < k; ++i) r *= q;
    return r;
}

std::uint64_t CurveParams::degree() const { return q_pow(n) + q_pow(m) - q * q - q; }

std::string CurveParams::to_string() const {
    return "(n,m,q)=(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(q) + ")";
}

TriPoly build_determinant(std::shared_ptr<const FieldCtx> ctx, const std::array<std::uint64_t, 3>& exps) {
    return frobenius_determinant(std::move(ctx), exps);
}

Curve build_curve(const CurveParams& params) {
    auto base = FieldCtx::create(params.p, params.e);
    Curve c{params, base, TriPoly(base), TriPoly(base), TriPoly(base)};
    c.D1 = build_determinant(c.base, {1, params.q_pow(params.m), params.q_pow(params.n)});
    c.D2 = build_determinant(c.base, {1, params.q, params.q * params.q});
    auto [quot, rem] = divide(c.D1, c.D2);
    if (!rem.is_zero()) throw ConsistencyError("D2 does not divide D1 for " + params.to_string());
    c.F = std::move(quot);
    if (c.F.homogeneous_degree() != params.degree()) {
        throw ConsistencyError("quotient has the wrong degree for " + params.to_string());
    }
    if (!(c.D2 * c.F == c.D1)) throw ConsistencyError("D2 * F != D1 for " + params.to_string());
    return c;
}

bool check_frobenius_nonclassical(const Curve& curve, std::uint32_t N) {
    if (N < 1) throw ValidationError("power N must be at least 1");
    const std::uint64_t QN = curve.params.q_pow(N);
    const auto& ctx = curve.F.ctx_ptr();
    TriPoly lhs(ctx);
    for (int v = 0; v < 3; ++v) {
        Monomial mono;
        (v == 0 ? mono.x : v == 1 ? mono.y : mono.z) = static_cast<std::uint32_t>(QN);
        lhs += partial(curve.F, v).times_monomial(mono, ctx->one());
    }
    return reduce_mod(lhs, curve.F).is_zero();
}

TriPoly pgl_transform(const TriPoly& f, const Mat3& A) {
    if (det(A).is_zero()) throw ValidationError("pgl_transform needs an invertible matrix");
    return compose_linear(f, A);
}

std::optional<FieldElement> stabilizes(const TriPoly& f, const Mat3& A) {
    if (f.is_zero()) throw ValidationError("stabilizes on the zero polynomial");
    const TriPoly g = pgl_transform(f, A);
    if (g.term_count() != f.term_count()) return std::nullopt;
    const FieldElement lead = g.coeff(f.leading_monomial());
    if (lead.is_zero()) return std::nullopt;
    const FieldElement lambda = lead / f.leading_coeff();
    for (const auto& [m, c] : f.terms()) {
        if (!(g.coeff(m) == c * lambda)) return std::nullopt;
    }
    return lambda;
}

bool AmbientCurve::is_singular(const ProjPoint& P) const {
    return F.eval(P.v).is_zero() && Fx.eval(P.v).is_zero() && Fy.eval(P.v).is_zero() && Fz.eval(P.v).is_zero();
}

std::uint32_t default_work_ext(const CurveParams& params) {
    std::uint32_t best = 1, l = 1;
    for (std::uint32_t j = 1; j <= params.n; ++j) {
        l = std::lcm(l, j);
        long double size = 1;
        for (std::uint32_t i = 0; i < l; ++i) size *= static_cast<long double>(params.q);
        if (size <= 65536.0L) best = l;
    }
    return best;
}

AmbientCurve make_ambient(const Curve& curve, std::uint32_t K) {
    if (K < 1) throw ValidationError("ambient extension degree must be at least 1");
    auto ctx = FieldCtx::create(curve.params.p, curve.params.e * K);
    AmbientCurve ac{curve.params, K, ctx, TriPoly(ctx), TriPoly(ctx), TriPoly(ctx), TriPoly(ctx), TriPoly(ctx)};
    const FieldEmbedding emb(curve.base, ac.ctx);
    ac.F = map_coefficients(curve.F, emb);
    ac.Fx = partial(ac.F, 0);
    ac.Fy = partial(ac.F, 1);
    ac.Fz = partial(ac.F, 2);
    ac.D2 = build_determinant(ac.ctx, {1, curve.params.q, curve.params.q * curve.params.q});
    return ac;
}

std::uint64_t count_points(const AmbientCurve& ac, std::uint32_t j, unsigned threads) {
    if (ac.K % j != 0) throw ValidationError("GF(q^" + std::to_string(j) + ") is not inside the ambient field");
    const auto pts = enumerate_plane(*ac.ctx, ac.q(), j);
    threads = std::max(1u, threads);
    std::atomic<std::uint64_t> total{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            std::uint64_t local = 0;
            for (std::size_t i = t; i < pts.size(); i += threads) local += ac.on_curve(pts[i]) ? 1 : 0;
            total += local;
        });
    }
    for (auto& th : pool) th.join();
    return total;
}

} // namespace fnc
