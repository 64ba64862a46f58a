#pragma once

// Sparse trivariate polynomials, binary forms and univariate helpers over a
// finite field.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fnc/field.hpp"
#include "fnc/linalg.hpp"

namespace fnc {

struct Monomial {
    std::uint32_t x = 0, y = 0, z = 0;

    std::uint64_t degree() const { return std::uint64_t{x} + y + z; }
    std::uint32_t exp(int var) const { return var == 0 ? x : var == 1 ? y : z; }
    bool divides(const Monomial& o) const { return x <= o.x && y <= o.y && z <= o.z; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);
// a / b, assuming b divides a.
Monomial operator/(const Monomial& a, const Monomial& b);

// Graded lexicographic with x > y > z.
bool grlex_greater(const Monomial& a, const Monomial& b);

struct GrlexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

class TriPoly {
public:
    using TermMap = std::map<Monomial, FieldElement, GrlexDescending>;

    explicit TriPoly(std::shared_ptr<const FieldCtx> ctx);

    // x, y or z for var = 0, 1, 2.
    static TriPoly variable(std::shared_ptr<const FieldCtx> ctx, int var);
    static TriPoly constant(std::shared_ptr<const FieldCtx> ctx, const FieldElement& c);
    static TriPoly monomial(std::shared_ptr<const FieldCtx> ctx, Monomial m, const FieldElement& c);

    const FieldCtx& ctx() const { return *ctx_; }
    const std::shared_ptr<const FieldCtx>& ctx_ptr() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Degree if every term has the same total degree; nullopt for the zero
    // polynomial or a non-homogeneous one.
    std::optional<std::uint64_t> homogeneous_degree() const;
    std::uint64_t total_degree() const;

    FieldElement coeff(const Monomial& m) const;
    const Monomial& leading_monomial() const;
    const FieldElement& leading_coeff() const;

    // Adds c*m, dropping the term if it cancels.
    void add_term(const Monomial& m, const FieldElement& c);

    TriPoly& operator+=(const TriPoly& o);
    TriPoly& operator-=(const TriPoly& o);
    friend TriPoly operator+(TriPoly a, const TriPoly& b) { return a += b; }
    friend TriPoly operator-(TriPoly a, const TriPoly& b) { return a -= b; }
    friend TriPoly operator*(const TriPoly& a, const TriPoly& b);
    TriPoly operator-() const;
    TriPoly scaled(const FieldElement& c) const;
    TriPoly times_monomial(const Monomial& m, const FieldElement& c) const;

    FieldElement eval(const Vec3& v) const;
    FieldElement eval(const FieldElement& x, const FieldElement& y, const FieldElement& z) const {
        return eval(Vec3{x, y, z});
    }

    // Terms in grlex order, e.g. "x^2*y + (t+1)*z^3".
    std::string to_string() const;

    friend bool operator==(const TriPoly& a, const TriPoly& b);

private:
    void check_ctx(const TriPoly& o) const;

    std::shared_ptr<const FieldCtx> ctx_;
    TermMap terms_;
};

TriPoly scale(const TriPoly& f, const FieldElement& c);

// Formal partial derivative; var = 0, 1, 2 for x, y, z.
TriPoly partial(const TriPoly& f, int var);

// Long division by a single divisor under grlex: f = q*g + r with no term of
// r divisible by LT(g).
std::pair<TriPoly, TriPoly> divide(const TriPoly& f, const TriPoly& g);
// Throws NotDivisible when the remainder is nonzero.
TriPoly exact_divide(const TriPoly& f, const TriPoly& g);
TriPoly reduce_mod(const TriPoly& f, const TriPoly& g);

// f(A v): each variable is replaced by the matching row of A applied to
// (x, y, z).
TriPoly compose_linear(const TriPoly& f, const Mat3& A);

// The determinant
//   | x^e0 x^e1 x^e2 |
//   | y^e0 y^e1 y^e2 |
//   | z^e0 z^e1 z^e2 |
// expanded into its six terms.
TriPoly frobenius_determinant(std::shared_ptr<const FieldCtx> ctx, const std::array<std::uint64_t, 3>& exps);

TriPoly map_coefficients(const TriPoly& f, const FieldEmbedding& emb);

// Homogeneous binary form G(s, t) = sum_i c[i] s^(d-i) t^i.
class BinaryForm {
public:
    BinaryForm(const FieldCtx* ctx, std::vector<FieldElement> coeffs);
    static BinaryForm zero(const FieldCtx* ctx, std::uint32_t degree);

    const FieldCtx& ctx() const { return *ctx_; }
    std::uint32_t degree() const { return static_cast<std::uint32_t>(coeffs_.size() - 1); }
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    FieldElement eval(const FieldElement& s, const FieldElement& t) const;
    std::string to_string() const;

private:
    const FieldCtx* ctx_;
    std::vector<FieldElement> coeffs_;
};

// G(s, t) = f(s*base + t*dir). f must be homogeneous (or zero).
BinaryForm restrict_to_line(const TriPoly& f, const Vec3& base, const Vec3& dir);

// Largest r with (t0*s - s0*t)^r | G.
std::uint32_t vanish_order(const BinaryForm& G, const FieldElement& s0, const FieldElement& t0);

struct FormRoot {
    FieldElement s, t;  // normalized: (1 : a) or (0 : 1)
    std::uint32_t multiplicity;
};

struct RootReport {
    std::vector<FormRoot> roots;
    bool squarefree = false;
    // Sum of the multiplicities of the roots found; equals the degree when
    // the form splits over the searched field.
    std::uint32_t found_degree = 0;
};

// Exhaustive root scan over P^1(GF(q^search_ext)) inside the form's field.
RootReport squarefree_and_roots(const BinaryForm& G, std::uint64_t q, std::uint32_t search_ext);
// Exhaustive root scan over P^1 of the form's whole field.
RootReport squarefree_and_roots(const BinaryForm& G);

bool is_squarefree(const BinaryForm& G);

// Divides out (t0*s - s0*t)^r.
BinaryForm divide_root(const BinaryForm& G, const FieldElement& s0, const FieldElement& t0, std::uint32_t r);

// Smallest j such that every root of G lies in P^1 over the degree-j
// extension of G's field; searched up to max_ext, 0 if not found.
std::uint32_t splitting_degree(const BinaryForm& G, std::uint32_t max_ext);

// Univariate polynomials over a finite field, constant term first, stored
// as raw element codes.
struct UniPoly {
    const FieldCtx* ctx = nullptr;
    std::vector<std::uint32_t> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    void trim();
};

namespace uni {
UniPoly add(const UniPoly& a, const UniPoly& b);
UniPoly sub(const UniPoly& a, const UniPoly& b);
UniPoly mul(const UniPoly& a, const UniPoly& b);
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly monic(const UniPoly& a);
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly derivative(const UniPoly& a);
// Requires a' = 0: returns b with b^p = a.
UniPoly pth_root(const UniPoly& a);
// Product of the distinct monic irreducible factors.
UniPoly radical(const UniPoly& a);
UniPoly powmod_x(std::uint64_t e, const UniPoly& m);
// base^Q mod m, where Q = |field| (Frobenius on the quotient ring).
UniPoly frobenius_mod(const UniPoly& base, const UniPoly& m);
std::uint32_t eval(const UniPoly& a, std::uint32_t x);
} // namespace uni

} // namespace fnc
