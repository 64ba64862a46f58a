#include "fnc/field.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace fnc {

namespace {

constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 32;
constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 20;

using Poly = std::vector<std::uint32_t>;  // GF(p)[x], constant term first

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // Fermat; p is prime and small.
    std::uint64_t r = 1, b = a % p;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod_p(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly r{1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        e >>= 1;
        if (e) base = poly_mulmod(base, base, m, p);
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
    if (q < 2) throw ValidationError("q must be a prime power >= 2, got " + std::to_string(q));
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;
    std::uint32_t e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw ValidationError("q must be a prime power, got " + std::to_string(q));
    return {static_cast<std::uint32_t>(p), e};
}

bool is_irreducible_mod_p(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
    Poly f = poly;
    trim(f);
    if (f.size() < 2) return false;
    const std::uint64_t k = f.size() - 1;
    if (k == 1) return true;
    // Rabin: x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for primes r | k.
    auto x_pow_p_pow = [&](std::uint64_t j) {
        Poly xp{0, 1};
        for (std::uint64_t i = 0; i < j; ++i) xp = poly_powmod(xp, p, f, p);
        return xp;
    };
    Poly full = x_pow_p_pow(k);
    Poly x{0, 1};
    x = poly_mod(x, f, p);
    if (full != x) return false;
    for (std::uint64_t r : prime_factors(k)) {
        Poly h = x_pow_p_pow(k / r);
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        Poly g = poly_gcd(h, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------- FieldCtx

FieldCtx::FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), k_(static_cast<std::uint32_t>(modulus.size() - 1)), modulus_(std::move(modulus)) {
    size_ = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        pow_p_.push_back(static_cast<std::uint32_t>(size_));
        size_ *= p_;
    }
}

std::shared_ptr<const FieldCtx> FieldCtx::create(std::uint32_t p, std::uint32_t k) {
    if (!is_prime(p)) throw ValidationError("characteristic must be prime, got " + std::to_string(p));
    if (k == 0) throw ValidationError("extension degree must be >= 1");
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        size *= p;
        if (size > kMaxFieldSize) throw ValidationError("field GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds 2^32 elements");
    }
    std::vector<std::uint32_t> mod(k + 1, 0);
    mod[k] = 1;
    if (k == 1) return create(p, mod);
    const std::uint64_t tail_count = size;  // p^k choices for the lower coefficients
    for (std::uint64_t c = 0; c < tail_count; ++c) {
        std::uint64_t r = c;
        for (std::uint32_t i = 0; i < k; ++i) {
            mod[i] = static_cast<std::uint32_t>(r % p);
            r /= p;
        }
        if (mod[0] == 0) continue;
        if (is_irreducible_mod_p(p, mod)) return create(p, mod);
    }
    throw ConsistencyError("no irreducible polynomial found");
}

std::shared_ptr<const FieldCtx> FieldCtx::create(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw ValidationError("characteristic must be prime, got " + std::to_string(p));
    trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1) throw ValidationError("modulus must be monic of degree >= 1");
    for (auto c : modulus) {
        if (c >= p) throw ValidationError("modulus coefficient out of range");
    }
    if (!is_irreducible_mod_p(p, modulus)) throw ValidationError("modulus is not irreducible");
    std::uint64_t size = 1;
    for (std::size_t i = 1; i < modulus.size(); ++i) {
        size *= p;
        if (size > kMaxFieldSize) throw ValidationError("field exceeds 2^32 elements");
    }
    std::shared_ptr<FieldCtx> ctx(new FieldCtx(p, std::move(modulus)));
    if (ctx->size_ <= kMaxTableSize) ctx->build_tables();
    return ctx;
}

std::string FieldCtx::name() const {
    if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

std::vector<std::uint32_t> FieldCtx::digits(std::uint32_t code) const {
    std::vector<std::uint32_t> d(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
        d[i] = code % p_;
        code /= p_;
    }
    return d;
}

std::uint32_t FieldCtx::undigits(const std::vector<std::uint32_t>& d) const {
    std::uint64_t code = 0;
    for (std::uint32_t i = k_; i-- > 0;) code = code * p_ + d[i];
    return static_cast<std::uint32_t>(code);
}

std::uint32_t FieldCtx::slow_mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    Poly pa = digits(a), pb = digits(b);
    Poly r = poly_mulmod(pa, pb, modulus_, p_);
    r.resize(k_, 0);
    return undigits(r);
}

void FieldCtx::build_tables() {
    const std::uint64_t order = size_ - 1;
    const auto factors = prime_factors(order);
    auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            e >>= 1;
            if (e) a = slow_mul(a, a);
        }
        return r;
    };
    std::uint32_t g = 0;
    for (std::uint64_t c = 1; c < size_; ++c) {
        bool primitive = true;
        for (auto r : factors) {
            if (slow_pow(static_cast<std::uint32_t>(c), order / r) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = static_cast<std::uint32_t>(c);
            break;
        }
    }
    primitive_ = g;
    exp_.resize(2 * order);
    log_.assign(size_, 0);
    std::uint32_t x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
        exp_[i] = x;
        log_[x] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, g);
    }
    for (std::uint64_t i = order; i < 2 * order; ++i) exp_[i] = exp_[i - order];
}

FieldElement FieldCtx::from_code(std::uint64_t code) const {
    if (code >= size_) throw ValidationError("element code out of range for " + name());
    return {this, static_cast<std::uint32_t>(code)};
}

FieldElement FieldCtx::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {this, static_cast<std::uint32_t>(r)};
}

FieldElement FieldCtx::from_coords(const std::vector<std::uint32_t>& coords) const {
    if (coords.size() > k_) throw ValidationError("too many coordinates for " + name());
    std::vector<std::uint32_t> d(k_, 0);
    for (std::size_t i = 0; i < coords.size(); ++i) d[i] = coords[i] % p_;
    return {this, undigits(d)};
}

FieldElement FieldCtx::generator() const {
    if (k_ == 1) return one();
    return {this, p_};
}

std::vector<FieldElement> FieldCtx::elements() const {
    std::vector<FieldElement> out;
    out.reserve(size_);
    for (std::uint64_t c = 0; c < size_; ++c) out.emplace_back(this, static_cast<std::uint32_t>(c));
    return out;
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) return (a + b) % p_;
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < k_ && (a | b); ++i) {
        const std::uint32_t d = (a % p_ + b % p_) % p_;
        r += d * pow_p_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    if (k_ == 1) return a ? p_ - a : 0;
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < k_ && a; ++i) {
        const std::uint32_t d = a % p_;
        r += (d ? p_ - d : 0) * pow_p_[i];
        a /= p_;
    }
    return r;
}

std::uint32_t FieldCtx::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldCtx::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero();
    if (!exp_.empty()) {
        const std::uint64_t order = size_ - 1;
        return exp_[(order - log_[a]) % order];
    }
    return pow(a, size_ - 2);
}

std::uint32_t FieldCtx::pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

std::string FieldCtx::format(std::uint32_t code) const {
    if (code == 0) return "0";
    const auto d = digits(code);
    std::string out;
    for (std::uint32_t i = k_; i-- > 0;) {
        if (d[i] == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(d[i]);
            continue;
        }
        if (d[i] != 1) out += std::to_string(d[i]) + "*";
        out += 't';
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

FieldElement FieldCtx::parse(std::string_view text) const {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.empty()) throw ValidationError("empty field element");
    auto bad = [&]() { return ValidationError("cannot parse field element '" + std::string(text) + "' in " + name()); };
    std::vector<std::int64_t> acc(k_, 0);
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') sign = -1;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        const std::string term = s.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw bad();
        std::int64_t coef = 1;
        std::uint64_t deg = 0;
        const auto tpos = term.find('t');
        if (tpos == std::string::npos) {
            for (char c : term) {
                if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
            }
            coef = std::stoll(term);
        } else {
            std::string cpart = term.substr(0, tpos);
            if (!cpart.empty()) {
                if (cpart.back() != '*') throw bad();
                cpart.pop_back();
                if (cpart.empty()) throw bad();
                for (char c : cpart) {
                    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
                }
                coef = std::stoll(cpart);
            }
            std::string epart = term.substr(tpos + 1);
            deg = 1;
            if (!epart.empty()) {
                if (epart[0] != '^' || epart.size() < 2) throw bad();
                for (std::size_t i = 1; i < epart.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(epart[i]))) throw bad();
                }
                deg = std::stoull(epart.substr(1));
            }
        }
        if (deg < k_) {
            acc[deg] += sign * coef;
        } else {
            // Reduce t^deg through the modulus.
            FieldElement r = fnc::pow(generator(), deg) * from_int(sign * coef);
            const auto d = digits(r.code());
            for (std::uint32_t i = 0; i < k_; ++i) acc[i] += d[i];
        }
    }
    std::vector<std::uint32_t> d(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::int64_t r = acc[i] % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        d[i] = static_cast<std::uint32_t>(r);
    }
    return {this, undigits(d)};
}

// ------------------------------------------------------------ FieldElement

const FieldCtx& FieldElement::ctx() const {
    if (!ctx_) throw ValidationError("field element without context");
    return *ctx_;
}

std::vector<std::uint32_t> FieldElement::coords() const {
    const auto& c = ctx();
    std::vector<std::uint32_t> out(c.k());
    std::uint32_t code = code_;
    for (auto& d : out) {
        d = code % c.p();
        code /= c.p();
    }
    return out;
}

std::string FieldElement::to_string() const { return ctx().format(code_); }

static inline void check_same(const FieldElement& a, const FieldElement& b) {
    if (a.ctx_ptr() != b.ctx_ptr() || a.ctx_ptr() == nullptr) throw FieldMismatch();
}

FieldElement FieldElement::operator-() const { return {ctx_, ctx().neg(code_)}; }

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(*this, o);
    code_ = ctx_->add(code_, o.code_);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(*this, o);
    code_ = ctx_->sub(code_, o.code_);
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(*this, o);
    code_ = ctx_->mul(code_, o.code_);
    return *this;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.ctx_ptr(), a.ctx().mul(a.code(), a.ctx().inv(b.code()))};
}

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }

FieldElement inv(const FieldElement& a) { return {a.ctx_ptr(), a.ctx().inv(a.code())}; }

FieldElement pow(const FieldElement& a, std::uint64_t e) { return {a.ctx_ptr(), a.ctx().pow(a.code(), e)}; }

FieldElement frobenius(const FieldElement& a, std::uint64_t Q) {
    const std::uint32_t p = a.ctx().p();
    std::uint64_t r = Q;
    while (r > 1 && r % p == 0) r /= p;
    if (r != 1 || Q == 0) throw ValidationError("Frobenius exponent " + std::to_string(Q) + " is not a power of " + std::to_string(p));
    return pow(a, Q);
}

namespace {

// Checks q = p^e with e | k and returns e.
std::uint32_t base_exponent(const FieldCtx& ctx, std::uint64_t q) {
    std::uint64_t r = q;
    std::uint32_t e = 0;
    while (r > 1 && r % ctx.p() == 0) {
        r /= ctx.p();
        ++e;
    }
    if (r != 1 || e == 0) throw ValidationError("q=" + std::to_string(q) + " is not a power of the characteristic of " + ctx.name());
    if (ctx.k() % e != 0) throw ValidationError("GF(" + std::to_string(q) + ") is not a subfield of " + ctx.name());
    return e;
}

} // namespace

std::uint32_t subfield_degree(const FieldElement& a, std::uint64_t q) {
    const auto& ctx = a.ctx();
    const std::uint32_t e = base_exponent(ctx, q);
    const std::uint32_t limit = ctx.k() / e;
    std::uint32_t b = a.code();
    for (std::uint32_t j = 1; j <= limit; ++j) {
        b = ctx.pow(b, q);
        if (b == a.code()) return j;
    }
    throw ConsistencyError("Frobenius orbit longer than field degree");
}

bool in_subfield(const FieldElement& a, std::uint64_t q, std::uint32_t j) {
    const auto& ctx = a.ctx();
    const std::uint32_t e = base_exponent(ctx, q);
    std::uint32_t b = a.code();
    for (std::uint64_t i = 0; i < std::uint64_t{e} * j; ++i) b = ctx.pow(b, ctx.p());
    return b == a.code();
}

std::vector<FieldElement> subfield_elements(const FieldCtx& ctx, std::uint64_t q, std::uint32_t j) {
    const std::uint32_t e = base_exponent(ctx, q);
    if (ctx.k() % (e * j) != 0) {
        throw ValidationError("GF(" + std::to_string(q) + "^" + std::to_string(j) + ") is not a subfield of " + ctx.name());
    }
    std::uint64_t sub_size = 1;
    for (std::uint32_t i = 0; i < e * j; ++i) sub_size *= ctx.p();
    std::vector<FieldElement> out;
    out.reserve(sub_size);
    if (sub_size == ctx.size()) return ctx.elements();
    out.push_back(ctx.zero());
    if (ctx.has_tables()) {
        // The subfield's multiplicative group is generated by g^((N-1)/(M-1)).
        const std::uint64_t step = (ctx.size() - 1) / (sub_size - 1);
        const std::uint32_t g = ctx.primitive_code();
        const std::uint32_t h = ctx.pow(g, step);
        std::uint32_t x = 1;
        for (std::uint64_t i = 0; i + 1 < sub_size; ++i) {
            out.emplace_back(&ctx, x);
            x = ctx.mul(x, h);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    for (const auto& a : ctx.elements()) {
        if (!a.is_zero() && ctx.pow(a.code(), sub_size) == a.code()) out.push_back(a);
    }
    return out;
}

// ---------------------------------------------------------- FieldEmbedding

FieldEmbedding::FieldEmbedding(std::shared_ptr<const FieldCtx> src, std::shared_ptr<const FieldCtx> dst)
    : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p() || dst_->k() % src_->k() != 0) {
        throw ValidationError("no embedding " + src_->name() + " -> " + dst_->name());
    }
    std::uint32_t root = 1;
    if (src_->k() > 1) {
        const auto& mod = src_->modulus();
        bool found = false;
        for (std::uint64_t c = 0; c < dst_->size() && !found; ++c) {
            std::uint32_t acc = 0;
            for (std::size_t i = mod.size(); i-- > 0;) {
                acc = dst_->add(dst_->mul(acc, static_cast<std::uint32_t>(c)), mod[i]);
            }
            if (acc == 0) {
                root = static_cast<std::uint32_t>(c);
                found = true;
            }
        }
        if (!found) throw ConsistencyError("modulus has no root in target field");
    }
    table_.resize(src_->size());
    for (std::uint64_t c = 0; c < src_->size(); ++c) {
        const auto d = FieldElement(src_.get(), static_cast<std::uint32_t>(c)).coords();
        std::uint32_t acc = 0;
        for (std::size_t i = d.size(); i-- > 0;) acc = dst_->add(dst_->mul(acc, root), d[i]);
        table_[c] = acc;
    }
}

FieldElement FieldEmbedding::operator()(const FieldElement& a) const {
    if (a.ctx_ptr() != src_.get()) throw FieldMismatch();
    return {dst_.get(), table_[a.code()]};
}

} // namespace fnc
