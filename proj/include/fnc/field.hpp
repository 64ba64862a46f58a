#pragma once

// Exact arithmetic in GF(p^k), polynomial basis over GF(p).
//
// An element is stored as its "code": the integer sum c_i p^i of its
// coordinates c_0 + c_1 t + ... + c_{k-1} t^{k-1}. Codes double as the
// deterministic enumeration order of the field.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fnc/errors.hpp"

namespace fnc {

class FieldCtx;

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FieldCtx* ctx, std::uint32_t code) : ctx_(ctx), code_(code) {}

    const FieldCtx& ctx() const;
    const FieldCtx* ctx_ptr() const { return ctx_; }
    std::uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }
    bool is_one() const { return code_ == 1; }

    // Coordinates in the polynomial basis, length k.
    std::vector<std::uint32_t> coords() const;
    std::string to_string() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.ctx_ == b.ctx_ && a.code_ == b.code_;
    }
    // Orders by code; only meaningful within one context.
    friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.code_ < b.code_; }

private:
    const FieldCtx* ctx_ = nullptr;
    std::uint32_t code_ = 0;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);
FieldElement pow(const FieldElement& a, std::uint64_t e);

// a^Q for Q a power of the characteristic (Q = 1 allowed).
FieldElement frobenius(const FieldElement& a, std::uint64_t Q);

// Smallest j >= 1 with a^(q^j) = a. q must be a power of p whose powers
// reach the field size.
std::uint32_t subfield_degree(const FieldElement& a, std::uint64_t q);

// GF(p^k) with a fixed monic irreducible modulus. Immutable once built;
// elements keep a raw pointer, so the context must outlive them.
class FieldCtx {
public:
    // Lexicographically smallest monic irreducible of degree k: the lower
    // coefficients (c_0, ..., c_{k-1}) are tried in increasing code order.
    static std::shared_ptr<const FieldCtx> create(std::uint32_t p, std::uint32_t k);
    // Explicit modulus given as k+1 coefficients, constant term first.
    static std::shared_ptr<const FieldCtx> create(std::uint32_t p, std::vector<std::uint32_t> modulus);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t size() const { return size_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    std::string name() const;

    FieldElement zero() const { return {this, 0}; }
    FieldElement one() const { return {this, 1}; }
    FieldElement from_code(std::uint64_t code) const;
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_coords(const std::vector<std::uint32_t>& coords) const;
    // The class of t, a root of the modulus (the element 1 when k = 1).
    FieldElement generator() const;

    // Every element once, in code order.
    std::vector<FieldElement> elements() const;

    // Polynomial-basis text such as "t^2+2*t+1".
    FieldElement parse(std::string_view text) const;
    std::string format(std::uint32_t code) const;

    // Raw-code arithmetic for hot loops.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    bool has_tables() const { return !exp_.empty(); }
    // Generator of the multiplicative group (only with tables).
    std::uint32_t primitive_code() const { return primitive_; }

private:
    FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus);
    void build_tables();
    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;
    std::vector<std::uint32_t> digits(std::uint32_t code) const;
    std::uint32_t undigits(const std::vector<std::uint32_t>& d) const;

    std::uint32_t p_;
    std::uint32_t k_;
    std::uint64_t size_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> pow_p_;  // p^i, i < k
    std::vector<std::uint32_t> exp_;   // g^i for i < 2(size-1)
    std::vector<std::uint32_t> log_;
    std::uint32_t primitive_ = 0;
};

// True when the degree-k polynomial (constant first) is irreducible over GF(p).
bool is_irreducible_mod_p(std::uint32_t p, const std::vector<std::uint32_t>& poly);

bool is_prime(std::uint64_t n);
// Returns (p, e) with q = p^e, or throws ValidationError.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

// Embedding GF(p^a) -> GF(p^b) for a | b: t maps to the smallest-code root
// of the source modulus in the target. Deterministic.
class FieldEmbedding {
public:
    FieldEmbedding(std::shared_ptr<const FieldCtx> src, std::shared_ptr<const FieldCtx> dst);
    FieldElement operator()(const FieldElement& a) const;
    const FieldCtx& src() const { return *src_; }
    const FieldCtx& dst() const { return *dst_; }
    const std::shared_ptr<const FieldCtx>& dst_ptr() const { return dst_; }

private:
    std::shared_ptr<const FieldCtx> src_;
    std::shared_ptr<const FieldCtx> dst_;
    std::vector<std::uint32_t> table_;  // src code -> dst code
};

// Elements of the subfield GF(q^j) inside ctx, in code order.
std::vector<FieldElement> subfield_elements(const FieldCtx& ctx, std::uint64_t q, std::uint32_t j);
bool in_subfield(const FieldElement& a, std::uint64_t q, std::uint32_t j);

} // namespace fnc
