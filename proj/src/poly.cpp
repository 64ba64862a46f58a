#include "fnc/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace fnc {

Monomial operator*(const Monomial& a, const Monomial& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Monomial operator/(const Monomial& a, const Monomial& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

bool grlex_greater(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    if (a.x != b.x) return a.x > b.x;
    if (a.y != b.y) return a.y > b.y;
    return a.z > b.z;
}

namespace {

std::uint64_t pack(std::uint64_t x, std::uint64_t y, std::uint64_t z) { return (x << 42) | (y << 21) | z; }
Monomial unpack(std::uint64_t k) {
    constexpr std::uint64_t mask = (std::uint64_t{1} << 21) - 1;
    return {static_cast<std::uint32_t>(k >> 42), static_cast<std::uint32_t>((k >> 21) & mask),
            static_cast<std::uint32_t>(k & mask)};
}

using Sparse = std::unordered_map<std::uint64_t, std::uint32_t>;

void accumulate(Sparse& acc, const FieldCtx& F, std::uint64_t key, std::uint32_t c) {
    if (c == 0) return;
    auto [it, inserted] = acc.try_emplace(key, c);
    if (!inserted) {
        it->second = F.add(it->second, c);
        if (it->second == 0) acc.erase(it);
    }
}

Sparse sparse_mul(const Sparse& a, const Sparse& b, const FieldCtx& F) {
    Sparse r;
    r.reserve(a.size() * b.size());
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) accumulate(r, F, ka + kb, F.mul(ca, cb));
    }
    return r;
}

} // namespace

// ------------------------------------------------------------------ TriPoly

TriPoly::TriPoly(std::shared_ptr<const FieldCtx> ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw ValidationError("polynomial without field context");
}

TriPoly TriPoly::variable(std::shared_ptr<const FieldCtx> ctx, int var) {
    Monomial m;
    if (var == 0) m.x = 1;
    else if (var == 1) m.y = 1;
    else if (var == 2) m.z = 1;
    else throw ValidationError("variable index must be 0, 1 or 2");
    const FieldElement one = ctx->one();
    return monomial(std::move(ctx), m, one);
}

TriPoly TriPoly::constant(std::shared_ptr<const FieldCtx> ctx, const FieldElement& c) {
    return monomial(std::move(ctx), Monomial{}, c);
}

TriPoly TriPoly::monomial(std::shared_ptr<const FieldCtx> ctx, Monomial m, const FieldElement& c) {
    TriPoly p(std::move(ctx));
    p.add_term(m, c);
    return p;
}

void TriPoly::check_ctx(const TriPoly& o) const {
    if (ctx_.get() != o.ctx_.get()) throw FieldMismatch();
}

std::optional<std::uint64_t> TriPoly::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const std::uint64_t d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_) {
        if (m.degree() != d) return std::nullopt;
    }
    return d;
}

std::uint64_t TriPoly::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

FieldElement TriPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ctx_->zero() : it->second;
}

const Monomial& TriPoly::leading_monomial() const {
    if (terms_.empty()) throw ValidationError("zero polynomial has no leading term");
    return terms_.begin()->first;
}

const FieldElement& TriPoly::leading_coeff() const {
    if (terms_.empty()) throw ValidationError("zero polynomial has no leading term");
    return terms_.begin()->second;
}

void TriPoly::add_term(const Monomial& m, const FieldElement& c) {
    if (c.ctx_ptr() != ctx_.get()) throw FieldMismatch();
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TriPoly& TriPoly::operator+=(const TriPoly& o) {
    check_ctx(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

TriPoly& TriPoly::operator-=(const TriPoly& o) {
    check_ctx(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    a.check_ctx(b);
    const FieldCtx& F = *a.ctx_;
    Sparse acc;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            accumulate(acc, F, pack(ma.x + mb.x, ma.y + mb.y, ma.z + mb.z), F.mul(ca.code(), cb.code()));
        }
    }
    TriPoly r(a.ctx_);
    for (const auto& [k, c] : acc) r.terms_.emplace(unpack(k), FieldElement(&F, c));
    return r;
}

TriPoly TriPoly::operator-() const { return scaled(-ctx_->one()); }

TriPoly TriPoly::scaled(const FieldElement& c) const {
    if (c.ctx_ptr() != ctx_.get()) throw FieldMismatch();
    TriPoly r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

TriPoly TriPoly::times_monomial(const Monomial& mono, const FieldElement& c) const {
    if (c.ctx_ptr() != ctx_.get()) throw FieldMismatch();
    TriPoly r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m * mono, v * c);
    return r;
}

TriPoly scale(const TriPoly& f, const FieldElement& c) { return f.scaled(c); }

FieldElement TriPoly::eval(const Vec3& v) const {
    const FieldCtx& F = *ctx_;
    for (const auto& e : v) {
        if (e.ctx_ptr() != ctx_.get()) throw FieldMismatch();
    }
    std::uint32_t acc = 0;
    for (const auto& [m, c] : terms_) {
        std::uint32_t t = c.code();
        t = F.mul(t, F.pow(v[0].code(), m.x));
        t = F.mul(t, F.pow(v[1].code(), m.y));
        t = F.mul(t, F.pow(v[2].code(), m.z));
        acc = F.add(acc, t);
    }
    return {ctx_.get(), acc};
}

std::string TriPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string mono;
        auto put = [&](char v, std::uint32_t e) {
            if (e == 0) return;
            if (!mono.empty()) mono += '*';
            mono += v;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        put('x', m.x);
        put('y', m.y);
        put('z', m.z);
        std::string coef = c.to_string();
        const bool compound = coef.find_first_of("+t") != std::string::npos;
        if (compound) coef = "(" + coef + ")";
        if (mono.empty()) {
            out += coef;
        } else if (c.is_one()) {
            out += mono;
        } else {
            out += coef + "*" + mono;
        }
    }
    return out;
}

bool operator==(const TriPoly& a, const TriPoly& b) {
    if (a.ctx_.get() != b.ctx_.get() || a.terms_.size() != b.terms_.size()) return false;
    return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                      [](const auto& u, const auto& v) { return u.first == v.first && u.second == v.second; });
}

TriPoly partial(const TriPoly& f, int var) {
    if (var < 0 || var > 2) throw ValidationError("variable index must be 0, 1 or 2");
    TriPoly r(f.ctx_ptr());
    for (const auto& [m, c] : f.terms()) {
        const std::uint32_t e = m.exp(var);
        if (e == 0) continue;
        const FieldElement factor = f.ctx().from_int(e % f.ctx().p());
        if (factor.is_zero()) continue;
        Monomial d = m;
        if (var == 0) --d.x;
        else if (var == 1) --d.y;
        else --d.z;
        r.add_term(d, c * factor);
    }
    return r;
}

std::pair<TriPoly, TriPoly> divide(const TriPoly& f, const TriPoly& g) {
    if (f.ctx_ptr().get() != g.ctx_ptr().get()) throw FieldMismatch();
    if (g.is_zero()) throw DivisionByZero();
    const Monomial lt = g.leading_monomial();
    const FieldElement lc_inv = inv(g.leading_coeff());
    TriPoly quot(f.ctx_ptr()), rem(f.ctx_ptr());
    TriPoly work = f;
    while (!work.is_zero()) {
        const Monomial m = work.leading_monomial();
        const FieldElement c = work.leading_coeff();
        if (lt.divides(m)) {
            const Monomial mq = m / lt;
            const FieldElement cq = c * lc_inv;
            quot.add_term(mq, cq);
            for (const auto& [mg, cg] : g.terms()) work.add_term(mq * mg, -(cq * cg));
        } else {
            rem.add_term(m, c);
            work.add_term(m, -c);
        }
    }
    return {quot, rem};
}

TriPoly exact_divide(const TriPoly& f, const TriPoly& g) {
    auto [q, r] = divide(f, g);
    if (!r.is_zero()) {
        throw NotDivisible("division leaves a remainder with " + std::to_string(r.term_count()) + " terms");
    }
    return q;
}

TriPoly reduce_mod(const TriPoly& f, const TriPoly& g) { return divide(f, g).second; }

TriPoly compose_linear(const TriPoly& f, const Mat3& A) {
    const FieldCtx& F = f.ctx();
    for (const auto& row : A) {
        for (const auto& e : row) {
            if (e.ctx_ptr() != &F) throw FieldMismatch();
        }
    }
    const std::uint32_t p = F.p();
    // Powers of the linear form of row `var`, through base-p digits:
    // l^(sum d_r p^r) = prod_r (l^(p^r))^(d_r), and l^(p^r) has three terms.
    std::array<std::unordered_map<std::uint32_t, Sparse>, 3> cache;
    auto lin_pow = [&](int var, std::uint32_t e) -> const Sparse& {
        auto it = cache[var].find(e);
        if (it != cache[var].end()) return it->second;
        Sparse result{{0, 1}};
        std::uint64_t pr = 1;
        for (std::uint32_t rest = e; rest; rest /= p, pr *= p) {
            const std::uint32_t d = rest % p;
            if (d == 0) continue;
            Sparse base;
            for (int j = 0; j < 3; ++j) {
                const std::uint32_t c = F.pow(A[var][j].code(), pr);
                if (c == 0) continue;
                const std::uint64_t key = j == 0 ? pack(pr, 0, 0) : j == 1 ? pack(0, pr, 0) : pack(0, 0, pr);
                base.emplace(key, c);
            }
            for (std::uint32_t i = 0; i < d; ++i) result = sparse_mul(result, base, F);
        }
        return cache[var].emplace(e, std::move(result)).first->second;
    };

    Sparse acc;
    std::unordered_map<std::uint64_t, Sparse> xy_cache;
    for (const auto& [m, c] : f.terms()) {
        const std::uint64_t xy_key = (std::uint64_t{m.x} << 32) | m.y;
        auto it = xy_cache.find(xy_key);
        if (it == xy_cache.end()) {
            it = xy_cache.emplace(xy_key, sparse_mul(lin_pow(0, m.x), lin_pow(1, m.y), F)).first;
        }
        const Sparse& xy = it->second;
        const Sparse& zp = lin_pow(2, m.z);
        for (const auto& [ka, ca] : xy) {
            const std::uint32_t cc = F.mul(ca, c.code());
            for (const auto& [kb, cb] : zp) accumulate(acc, F, ka + kb, F.mul(cc, cb));
        }
    }
    TriPoly r(f.ctx_ptr());
    for (const auto& [k, c] : acc) r.add_term(unpack(k), FieldElement(&F, c));
    return r;
}

TriPoly frobenius_determinant(std::shared_ptr<const FieldCtx> ctx, const std::array<std::uint64_t, 3>& exps) {
    TriPoly r(ctx);
    const FieldElement one = ctx->one();
    // Leibniz expansion over permutations (sign, column for x, y, z).
    static constexpr int perms[6][4] = {{1, 0, 1, 2}, {1, 1, 2, 0}, {1, 2, 0, 1},
                                        {-1, 0, 2, 1}, {-1, 1, 0, 2}, {-1, 2, 1, 0}};
    for (const auto& pm : perms) {
        Monomial m{static_cast<std::uint32_t>(exps[pm[1]]), static_cast<std::uint32_t>(exps[pm[2]]),
                   static_cast<std::uint32_t>(exps[pm[3]])};
        r.add_term(m, pm[0] > 0 ? one : -one);
    }
    return r;
}

TriPoly map_coefficients(const TriPoly& f, const FieldEmbedding& emb) {
    TriPoly r(emb.dst_ptr());
    for (const auto& [m, c] : f.terms()) r.add_term(m, emb(c));
    return r;
}

} // namespace fnc
