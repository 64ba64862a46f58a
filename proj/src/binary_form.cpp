#include "fnc/poly.hpp"

#include <algorithm>

namespace fnc {

// --------------------------------------------------------------- BinaryForm

BinaryForm::BinaryForm(const FieldCtx* ctx, std::vector<FieldElement> coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)) {
    if (!ctx_) throw ValidationError("binary form without field context");
    if (coeffs_.empty()) coeffs_.push_back(ctx_->zero());
    for (const auto& c : coeffs_) {
        if (c.ctx_ptr() != ctx_) throw FieldMismatch();
    }
}

BinaryForm BinaryForm::zero(const FieldCtx* ctx, std::uint32_t degree) {
    return BinaryForm(ctx, std::vector<FieldElement>(degree + 1, ctx->zero()));
}

bool BinaryForm::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const FieldElement& c) { return c.is_zero(); });
}

FieldElement BinaryForm::eval(const FieldElement& s, const FieldElement& t) const {
    if (s.ctx_ptr() != ctx_ || t.ctx_ptr() != ctx_) throw FieldMismatch();
    const std::uint32_t d = degree();
    const FieldCtx& F = *ctx_;
    std::uint32_t acc = 0, tp = 1;
    for (std::uint32_t i = 0; i <= d; ++i) {
        acc = F.add(acc, F.mul(coeffs_[i].code(), F.mul(F.pow(s.code(), d - i), tp)));
        tp = F.mul(tp, t.code());
    }
    return {ctx_, acc};
}

std::string BinaryForm::to_string() const {
    const std::uint32_t d = degree();
    std::string out;
    for (std::uint32_t i = 0; i <= d; ++i) {
        const auto& c = coeffs_[i];
        if (c.is_zero()) continue;
        std::string mono;
        auto put = [&](char v, std::uint32_t e) {
            if (e == 0) return;
            if (!mono.empty()) mono += '*';
            mono += v;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        put('s', d - i);
        put('t', i);
        std::string coef = c.to_string();
        if (coef.find_first_of("+t") != std::string::npos) coef = "(" + coef + ")";
        if (!out.empty()) out += " + ";
        if (mono.empty()) out += coef;
        else if (c.is_one()) out += mono;
        else out += coef + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

BinaryForm restrict_to_line(const TriPoly& f, const Vec3& base, const Vec3& dir) {
    const FieldCtx& F = f.ctx();
    for (int i = 0; i < 3; ++i) {
        if (base[i].ctx_ptr() != &F || dir[i].ctx_ptr() != &F) throw FieldMismatch();
    }
    if (is_zero(cross(base, dir))) throw ValidationError("restrict_to_line: base and direction are the same projective point");
    if (f.is_zero()) return BinaryForm::zero(&F, 0);
    const auto hd = f.homogeneous_degree();
    if (!hd) throw ValidationError("restrict_to_line needs a homogeneous polynomial");
    const std::uint32_t d = static_cast<std::uint32_t>(*hd);

    // pw[v][e][i] = coefficient of s^(e-i) t^i in (base_v s + dir_v t)^e,
    // with the nonzero positions cached for sparse convolution.
    struct Power {
        std::vector<std::uint32_t> coef;
        std::vector<std::uint32_t> nz;
    };
    std::array<std::vector<Power>, 3> pw;
    for (int v = 0; v < 3; ++v) {
        std::uint32_t maxe = 0;
        for (const auto& [m, c] : f.terms()) maxe = std::max(maxe, m.exp(v));
        const std::uint32_t a = base[v].code(), b = dir[v].code();
        pw[v].resize(maxe + 1);
        pw[v][0].coef = {1};
        for (std::uint32_t e = 1; e <= maxe; ++e) {
            const auto& prev = pw[v][e - 1].coef;
            std::vector<std::uint32_t> cur(e + 1, 0);
            for (std::uint32_t i = 0; i < e; ++i) {
                if (!prev[i]) continue;
                cur[i] = F.add(cur[i], F.mul(a, prev[i]));
                cur[i + 1] = F.add(cur[i + 1], F.mul(b, prev[i]));
            }
            pw[v][e].coef = std::move(cur);
        }
        for (auto& P : pw[v]) {
            for (std::uint32_t i = 0; i < P.coef.size(); ++i) {
                if (P.coef[i]) P.nz.push_back(i);
            }
        }
    }
    std::vector<std::uint32_t> out(d + 1, 0), xy;
    for (const auto& [m, c] : f.terms()) {
        const Power& px = pw[0][m.x];
        const Power& py = pw[1][m.y];
        const Power& pz = pw[2][m.z];
        xy.assign(m.x + m.y + 1, 0);
        for (auto i : px.nz) {
            const std::uint32_t ci = F.mul(px.coef[i], c.code());
            for (auto j : py.nz) xy[i + j] = F.add(xy[i + j], F.mul(ci, py.coef[j]));
        }
        for (std::uint32_t i = 0; i < xy.size(); ++i) {
            if (!xy[i]) continue;
            for (auto j : pz.nz) out[i + j] = F.add(out[i + j], F.mul(xy[i], pz.coef[j]));
        }
    }
    std::vector<FieldElement> coeffs;
    coeffs.reserve(d + 1);
    for (auto c : out) coeffs.emplace_back(&F, c);
    return BinaryForm(&F, std::move(coeffs));
}

namespace {

// Divides G by (alpha*s + beta*t) if it is a factor.
bool divide_linear(const FieldCtx& F, const std::vector<std::uint32_t>& c, std::uint32_t alpha, std::uint32_t beta,
                   std::vector<std::uint32_t>& h) {
    const std::size_t d = c.size() - 1;
    if (d == 0) return false;
    h.assign(d, 0);
    if (alpha != 0) {
        const std::uint32_t ainv = F.inv(alpha);
        h[0] = F.mul(c[0], ainv);
        for (std::size_t i = 1; i < d; ++i) h[i] = F.mul(F.sub(c[i], F.mul(beta, h[i - 1])), ainv);
        return c[d] == F.mul(beta, h[d - 1]);
    }
    // L = beta*t: G must have no s^d term.
    if (c[0] != 0) return false;
    const std::uint32_t binv = F.inv(beta);
    for (std::size_t i = 1; i <= d; ++i) h[i - 1] = F.mul(c[i], binv);
    return true;
}

std::vector<std::uint32_t> codes(const BinaryForm& G) {
    std::vector<std::uint32_t> c;
    c.reserve(G.coeffs().size());
    for (const auto& e : G.coeffs()) c.push_back(e.code());
    return c;
}

BinaryForm from_codes(const FieldCtx& F, const std::vector<std::uint32_t>& c) {
    std::vector<FieldElement> out;
    out.reserve(c.size());
    for (auto v : c) out.emplace_back(&F, v);
    return BinaryForm(&F, std::move(out));
}

UniPoly dehomogenize(const BinaryForm& G) {
    UniPoly g{&G.ctx(), codes(G)};
    g.trim();
    return g;
}

RootReport scan_roots(const BinaryForm& G, const std::vector<FieldElement>& candidates) {
    if (G.is_zero()) throw InfiniteOrder();
    const FieldCtx& F = G.ctx();
    RootReport rep;
    const auto c = codes(G);
    const std::uint32_t d = G.degree();
    if (c[d] == 0) {
        const std::uint32_t r = vanish_order(G, F.zero(), F.one());
        rep.roots.push_back({F.zero(), F.one(), r});
        rep.found_degree += r;
    }
    for (const auto& a : candidates) {
        std::uint32_t acc = 0;
        for (std::uint32_t i = d + 1; i-- > 0;) acc = F.add(F.mul(acc, a.code()), c[i]);
        if (acc != 0) continue;
        const std::uint32_t r = vanish_order(G, F.one(), a);
        rep.roots.push_back({F.one(), a, r});
        rep.found_degree += r;
    }
    rep.squarefree = is_squarefree(G);
    return rep;
}

} // namespace

std::uint32_t vanish_order(const BinaryForm& G, const FieldElement& s0, const FieldElement& t0) {
    if (s0.ctx_ptr() != &G.ctx() || t0.ctx_ptr() != &G.ctx()) throw FieldMismatch();
    if (s0.is_zero() && t0.is_zero()) throw ValidationError("vanish_order at (0, 0)");
    if (G.is_zero()) throw InfiniteOrder();
    const FieldCtx& F = G.ctx();
    // L = t0*s - s0*t.
    const std::uint32_t alpha = t0.code(), beta = F.neg(s0.code());
    auto c = codes(G);
    std::vector<std::uint32_t> h;
    std::uint32_t r = 0;
    while (divide_linear(F, c, alpha, beta, h)) {
        ++r;
        c.swap(h);
    }
    return r;
}

BinaryForm divide_root(const BinaryForm& G, const FieldElement& s0, const FieldElement& t0, std::uint32_t r) {
    const FieldCtx& F = G.ctx();
    const std::uint32_t alpha = t0.code(), beta = F.neg(s0.code());
    auto c = codes(G);
    std::vector<std::uint32_t> h;
    for (std::uint32_t i = 0; i < r; ++i) {
        if (!divide_linear(F, c, alpha, beta, h)) throw NotDivisible("binary form is not divisible by the given root power");
        c.swap(h);
    }
    return from_codes(F, c);
}

bool is_squarefree(const BinaryForm& G) {
    if (G.is_zero()) return false;
    const UniPoly g = dehomogenize(G);
    const int inf_mult = static_cast<int>(G.degree()) - g.degree();
    if (inf_mult >= 2) return false;
    if (g.degree() <= 0) return true;
    return uni::gcd(g, uni::derivative(g)).degree() == 0;
}

RootReport squarefree_and_roots(const BinaryForm& G, std::uint64_t q, std::uint32_t search_ext) {
    return scan_roots(G, subfield_elements(G.ctx(), q, search_ext));
}

RootReport squarefree_and_roots(const BinaryForm& G) { return scan_roots(G, G.ctx().elements()); }

std::uint32_t splitting_degree(const BinaryForm& G, std::uint32_t max_ext) {
    if (G.is_zero()) throw InfiniteOrder();
    const UniPoly g = dehomogenize(G);
    if (g.degree() <= 1) return 1;
    const UniPoly r = uni::radical(g);
    if (r.degree() <= 1) return 1;
    const UniPoly x = uni::divmod(UniPoly{&G.ctx(), {0, 1}}, r).second;
    UniPoly cur = x;
    for (std::uint32_t j = 1; j <= max_ext; ++j) {
        cur = uni::frobenius_mod(cur, r);
        if (cur.c == x.c) return j;
    }
    return 0;
}

// ------------------------------------------------------------------ UniPoly

void UniPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

namespace uni {

UniPoly add(const UniPoly& a, const UniPoly& b) {
    UniPoly r{a.ctx, a.c};
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.ctx->add(r.c[i], b.c[i]);
    r.trim();
    return r;
}

UniPoly sub(const UniPoly& a, const UniPoly& b) {
    UniPoly r{a.ctx, a.c};
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.ctx->sub(r.c[i], b.c[i]);
    r.trim();
    return r;
}

UniPoly mul(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {a.ctx, {}};
    const FieldCtx& F = *a.ctx;
    UniPoly r{a.ctx, std::vector<std::uint32_t>(a.c.size() + b.c.size() - 1, 0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    const FieldCtx& F = *b.ctx;
    UniPoly rem{b.ctx, a.c};
    rem.trim();
    const int db = b.degree();
    if (rem.degree() < db) return {UniPoly{b.ctx, {}}, rem};
    UniPoly quot{b.ctx, std::vector<std::uint32_t>(rem.degree() - db + 1, 0)};
    const std::uint32_t linv = F.inv(b.c.back());
    while (rem.degree() >= db) {
        const int shift = rem.degree() - db;
        const std::uint32_t coef = F.mul(rem.c.back(), linv);
        quot.c[shift] = coef;
        for (int i = 0; i <= db; ++i) rem.c[shift + i] = F.sub(rem.c[shift + i], F.mul(coef, b.c[i]));
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

UniPoly monic(const UniPoly& a) {
    if (a.is_zero()) return a;
    const FieldCtx& F = *a.ctx;
    const std::uint32_t linv = F.inv(a.c.back());
    UniPoly r = a;
    for (auto& v : r.c) v = F.mul(v, linv);
    return r;
}

UniPoly gcd(UniPoly a, UniPoly b) {
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

UniPoly derivative(const UniPoly& a) {
    if (a.c.size() <= 1) return {a.ctx, {}};
    const FieldCtx& F = *a.ctx;
    UniPoly r{a.ctx, std::vector<std::uint32_t>(a.c.size() - 1, 0)};
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        r.c[i - 1] = F.mul(a.c[i], F.from_int(static_cast<std::int64_t>(i % F.p())).code());
    }
    r.trim();
    return r;
}

UniPoly pth_root(const UniPoly& a) {
    const FieldCtx& F = *a.ctx;
    const std::uint32_t p = F.p();
    UniPoly r{a.ctx, {}};
    if (a.is_zero()) return r;
    r.c.assign(a.degree() / p + 1, 0);
    // x^(1/p) = x^(p^(k-1)) in GF(p^k).
    std::uint64_t root_exp = 1;
    for (std::uint32_t i = 1; i < F.k(); ++i) root_exp *= p;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        if (i % p != 0) throw ValidationError("pth_root of a polynomial with nonzero derivative");
        r.c[i / p] = F.pow(a.c[i], root_exp);
    }
    r.trim();
    return r;
}

UniPoly radical(const UniPoly& a) {
    if (a.degree() <= 0) return UniPoly{a.ctx, {1}};
    const UniPoly d = derivative(a);
    if (d.is_zero()) return radical(pth_root(a));
    const UniPoly g = gcd(a, d);
    // w carries every irreducible factor whose multiplicity is prime to p;
    // the rest survive in g.
    const UniPoly w = monic(divmod(a, g).first);
    const UniPoly rest = radical(g);
    const UniPoly common = gcd(w, rest);
    return monic(divmod(mul(w, rest), common).first);
}

namespace {
UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) { return divmod(mul(a, b), m).second; }
} // namespace

UniPoly powmod_x(std::uint64_t e, const UniPoly& m) {
    UniPoly base = divmod(UniPoly{m.ctx, {0, 1}}, m).second;
    UniPoly r = divmod(UniPoly{m.ctx, {1}}, m).second;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        e >>= 1;
        if (e) base = mulmod(base, base, m);
    }
    return r;
}

UniPoly frobenius_mod(const UniPoly& base, const UniPoly& m) {
    std::uint64_t e = base.ctx->size();
    UniPoly b = divmod(base, m).second;
    UniPoly r = divmod(UniPoly{m.ctx, {1}}, m).second;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        e >>= 1;
        if (e) b = mulmod(b, b, m);
    }
    return r;
}

std::uint32_t eval(const UniPoly& a, std::uint32_t x) {
    const FieldCtx& F = *a.ctx;
    std::uint32_t acc = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.c[i]);
    return acc;
}

} // namespace uni

} // namespace fnc
