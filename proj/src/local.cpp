#include "fnc/local.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace fnc {

namespace {

// C(n, k) mod p by Lucas' theorem.
std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    while (k > 0 || n > 0) {
        const std::uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        // C(ni, ki) with ni < p, computed exactly.
        std::uint64_t c = 1;
        for (std::uint64_t i = 0; i < ki; ++i) c = c * (ni - i) / (i + 1);
        r = r * (c % p) % p;
        n /= p;
        k /= p;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

LocalChart chart_at(const ProjPoint& Q, std::optional<int> pivot) {
    int pv = -1;
    if (pivot) {
        pv = *pivot;
        if (pv < 0 || pv > 2 || Q[pv].is_zero()) throw ValidationError("chart pivot coordinate must be nonzero");
    } else {
        for (int i = 0; i < 3 && pv < 0; ++i) {
            if (!Q[i].is_zero()) pv = i;
        }
    }
    LocalChart c;
    c.pivot = pv;
    c.a = pv == 0 ? 1 : 0;
    c.b = pv == 2 ? 1 : 2;
    const FieldElement s = inv(Q[pv]);
    c.u0 = Q[c.a] * s;
    c.v0 = Q[c.b] * s;
    return c;
}

BinaryForm local_part(const AmbientCurve& ac, const LocalChart& chart, std::uint32_t r) {
    const FieldCtx& F = *ac.ctx;
    const std::uint32_t p = F.p();
    std::vector<std::uint32_t> out(r + 1, 0);
    const std::uint32_t u0 = chart.u0.code(), v0 = chart.v0.code();
    for (const auto& [mono, coef] : ac.F.terms()) {
        const std::uint32_t ea = mono.exp(chart.a), eb = mono.exp(chart.b);
        if (ea + eb < r) continue;
        for (std::uint32_t s = 0; s <= r; ++s) {
            const std::uint32_t t = r - s;
            if (s > ea || t > eb) continue;
            const std::uint32_t bc = binom_mod_p(ea, s, p) * binom_mod_p(eb, t, p) % p;
            if (bc == 0) continue;
            std::uint32_t term = F.mul(coef.code(), F.from_int(bc).code());
            term = F.mul(term, F.pow(u0, ea - s));
            term = F.mul(term, F.pow(v0, eb - t));
            out[t] = F.add(out[t], term);
        }
    }
    std::vector<FieldElement> coeffs;
    coeffs.reserve(r + 1);
    for (auto c : out) coeffs.emplace_back(&F, c);
    return BinaryForm(&F, std::move(coeffs));
}

namespace {

std::pair<std::uint32_t, BinaryForm> lowest_part(const AmbientCurve& ac, const LocalChart& chart) {
    const std::uint32_t d = ac.degree();
    for (std::uint32_t r = 0; r <= d; ++r) {
        BinaryForm part = local_part(ac, chart, r);
        if (!part.is_zero()) return {r, std::move(part)};
    }
    throw ConsistencyError("curve polynomial vanishes identically in a chart");
}

} // namespace

std::uint32_t multiplicity_at(const AmbientCurve& ac, const ProjPoint& Q, std::optional<int> pivot) {
    if (&Q.ctx() != ac.ctx.get()) throw FieldMismatch();
    if (!ac.on_curve(Q)) throw NotOnCurve("point " + Q.to_string() + " is not on the curve");
    return lowest_part(ac, chart_at(Q, pivot)).first;
}

TangentCone tangent_cone_at(const AmbientCurve& ac, const ProjPoint& Q) {
    if (&Q.ctx() != ac.ctx.get()) throw FieldMismatch();
    if (!ac.on_curve(Q)) throw NotOnCurve("point " + Q.to_string() + " is not on the curve");
    const LocalChart chart = chart_at(Q);
    auto [r, cone] = lowest_part(ac, chart);
    TangentCone tc{r, chart, cone, {}, false, false};
    const FieldCtx& F = *ac.ctx;
    const RootReport rep = squarefree_and_roots(cone);
    tc.split = rep.found_degree == r;
    tc.squarefree = rep.squarefree;
    for (const auto& root : rep.roots) {
        Vec3 dir{F.zero(), F.zero(), F.zero()};
        dir[chart.a] = root.s;
        dir[chart.b] = root.t;
        tc.lines.push_back({line_through(Q, ProjPoint(dir)), root.multiplicity});
    }
    std::sort(tc.lines.begin(), tc.lines.end(), [](const ConeLine& x, const ConeLine& y) { return x.line < y.line; });
    return tc;
}

std::uint32_t intersection_multiplicity(const AmbientCurve& ac, const ProjLine& L, const ProjPoint& Q) {
    if (!L.contains(Q)) throw ValidationError("point " + Q.to_string() + " is not on line " + L.to_string());
    if (!ac.on_curve(Q)) return 0;
    const ProjPoint D = other_point_on_line(L, Q);
    const BinaryForm G = restrict_to_line(ac.F, Q.v, D.v);
    return vanish_order(G, ac.ctx->one(), ac.ctx->zero());
}

std::string case_label(SingularCase c) {
    switch (c) {
    case SingularCase::a_i: return "a-i";
    case SingularCase::a_ii: return "a-ii";
    case SingularCase::a_iii: return "a-iii";
    case SingularCase::b_i: return "b-i";
    case SingularCase::b_ii: return "b-ii";
    case SingularCase::c: return "c";
    }
    return "?";
}

SingularCase classify_singular(const CurveParams& params, bool in_S, bool in_base_plane) {
    if (params.m > 1) {
        if (in_base_plane) return SingularCase::a_iii;
        return in_S ? SingularCase::a_ii : SingularCase::a_i;
    }
    if (params.q == 2) return SingularCase::c;
    return in_S ? SingularCase::b_ii : SingularCase::b_i;
}

bool predicted_singular(const CurveParams& params, std::uint32_t field_degree, bool in_S) {
    if (params.m > 1) return (params.n - params.m) % field_degree == 0;
    if ((params.n - 1) % field_degree != 0) return false;
    if (params.q == 2) return !in_S;
    return field_degree > 1;
}

CaseExpectation expected_for(const CurveParams& params, SingularCase c) {
    const std::uint64_t q = params.q, qm = ipow(q, params.m), qn = ipow(q, params.n);
    auto u = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    switch (c) {
    case SingularCase::a_i: return {u(qm), false, 1, u(qm + 1)};
    case SingularCase::a_ii: return {u(qm - 1), false, 1, u(qm)};
    case SingularCase::a_iii: return {u(qm - q), true, u(qm - q), u(qn - q)};
    case SingularCase::b_i: return {u(q), false, 1, u(q + 1)};
    case SingularCase::b_ii: return {u(q - 1), false, 1, u(q)};
    case SingularCase::c: return {2, false, 1, 3};
    }
    throw ValidationError("unknown singular case");
}

SingularRecord analyze_singular(const AmbientCurve& ac, const ProjPoint& Q) {
    SingularRecord rec;
    rec.point = Q;
    rec.field_degree = field_of_definition(Q, ac.q());
    rec.in_S = ac.in_S(Q);
    rec.in_base_plane = rec.field_degree == 1;
    const TangentCone tc = tangent_cone_at(ac, Q);
    rec.multiplicity = tc.multiplicity;
    rec.cone_split = tc.split;
    rec.ordinary = tc.split && tc.squarefree && tc.lines.size() == tc.multiplicity;
    for (const auto& cl : tc.lines) {
        rec.tangents.push_back({cl.line, intersection_multiplicity(ac, cl.line, Q), cl.cone_multiplicity});
    }
    rec.label = classify_singular(ac.params, rec.in_S, rec.in_base_plane);
    return rec;
}

std::string SingularReport::verified_within() const {
    return "verified within GF(q^j), j <= " + std::to_string(max_ext);
}

SingularReport find_singular_points(const AmbientCurve& ac, std::uint32_t max_ext, unsigned threads) {
    const CurveParams& P = ac.params;
    const std::uint32_t need = P.m > 1 ? P.n - P.m : P.n - 1;
    if (max_ext < need) {
        throw ValidationError("max_ext must be at least " + std::to_string(need) + " to cover the predicted locus");
    }
    for (std::uint32_t j = 1; j <= max_ext; ++j) {
        if (ac.K % j != 0) {
            throw ValidationError("GF(q^" + std::to_string(j) + ") is not inside the ambient field GF(q^" +
                                  std::to_string(ac.K) + ")");
        }
    }
    std::vector<ProjPoint> pts;
    for (std::uint32_t j = 1; j <= max_ext; ++j) {
        for (auto& R : enumerate_plane(*ac.ctx, ac.q(), j)) {
            if (field_of_definition(R, ac.q()) == j) pts.push_back(std::move(R));
        }
    }
    SingularReport rep;
    rep.max_ext = max_ext;
    rep.scanned = pts.size();
    std::mutex mu;
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            std::vector<SingularRecord> recs;
            std::vector<std::string> bad;
            std::uint64_t predicted = 0;
            for (std::size_t i = t; i < pts.size(); i += threads) {
                const ProjPoint& R = pts[i];
                const bool sing = ac.is_singular(R);
                const bool pred = predicted_singular(P, field_of_definition(R, ac.q()), ac.in_S(R));
                predicted += pred ? 1 : 0;
                if (sing != pred) {
                    bad.push_back(R.to_string() + (sing ? " is singular but not predicted" : " is predicted singular but smooth or off the curve"));
                }
                if (!sing) continue;
                SingularRecord rec = analyze_singular(ac, R);
                const CaseExpectation ex = expected_for(P, rec.label);
                std::string why;
                if (rec.multiplicity != ex.multiplicity) why += " multiplicity " + std::to_string(rec.multiplicity);
                if (rec.ordinary != ex.ordinary) why += rec.ordinary ? " ordinary" : " not ordinary";
                if (!rec.cone_split) why += " tangent cone does not split";
                if (rec.tangents.size() != ex.tangent_count) why += " tangent count " + std::to_string(rec.tangents.size());
                for (const auto& tr : rec.tangents) {
                    if (tr.imult != ex.tangent_imult) why += " tangent order " + std::to_string(tr.imult);
                }
                if (!why.empty()) bad.push_back(R.to_string() + " (" + case_label(rec.label) + "):" + why);
                recs.push_back(std::move(rec));
            }
            std::lock_guard<std::mutex> lock(mu);
            rep.predicted_count += predicted;
            for (auto& r : recs) rep.records.push_back(std::move(r));
            for (auto& b : bad) rep.mismatches.push_back(std::move(b));
        });
    }
    for (auto& th : pool) th.join();
    std::sort(rep.records.begin(), rep.records.end(),
              [](const SingularRecord& x, const SingularRecord& y) { return x.point < y.point; });
    std::sort(rep.mismatches.begin(), rep.mismatches.end());
    rep.found_count = rep.records.size();
    return rep;
}

} // namespace fnc
