#pragma once

// The curves F = D1 / D2 with
//   D1 = det[x, x^(q^m), x^(q^n); y, ...; z, ...],
//   D2 = det[x, x^q, x^(q^2); y, ...; z, ...].

#include <memory>
#include <optional>

#include "fnc/geom.hpp"
#include "fnc/poly.hpp"

namespace fnc {

struct CurveParams {
    std::uint64_t q = 0;
    std::uint32_t n = 0, m = 0;
    std::uint32_t p = 0, e = 0;  // q = p^e

    // Requires q a prime power, n >= 3, n > m >= 1, gcd(n, m) = 1.
    static CurveParams make(std::uint64_t q, std::uint32_t n, std::uint32_t m);

    std::uint64_t q_pow(std::uint32_t k) const;
    // q^n + q^m - q^2 - q
    std::uint64_t degree() const;
    std::string to_string() const;  // "(n,m,q)=(3,1,2)"
};

struct Curve {
    CurveParams params;
    std::shared_ptr<const FieldCtx> base;  // GF(q)
    TriPoly D1, D2, F;
};

TriPoly build_determinant(std::shared_ptr<const FieldCtx> ctx, const std::array<std::uint64_t, 3>& exps);

// Throws ConsistencyError if D2 does not divide D1 or the degree is off.
Curve build_curve(const CurveParams& params);

// reduce_mod(x^(q^N) F_x + y^(q^N) F_y + z^(q^N) F_z, F) == 0
bool check_frobenius_nonclassical(const Curve& curve, std::uint32_t N);

// f(A v). A must be invertible; f and A share a field.
TriPoly pgl_transform(const TriPoly& f, const Mat3& A);
// lambda with f(A v) = lambda f, if any.
std::optional<FieldElement> stabilizes(const TriPoly& f, const Mat3& A);

// The curve's data carried into an ambient field GF(q^K).
struct AmbientCurve {
    CurveParams params;
    std::uint32_t K = 0;
    std::shared_ptr<const FieldCtx> ctx;
    TriPoly F, Fx, Fy, Fz, D2;

    std::uint64_t q() const { return params.q; }
    std::uint32_t degree() const { return static_cast<std::uint32_t>(params.degree()); }
    const TriPoly& grad(int i) const { return i == 0 ? Fx : i == 1 ? Fy : Fz; }
    bool on_curve(const ProjPoint& P) const { return F.eval(P.v).is_zero(); }
    bool is_singular(const ProjPoint& P) const;
    // F_q-line membership through both routes.
    bool in_S(const ProjPoint& P) const { return lies_on_fq_line(P, params.q, D2); }
};

// Largest lcm(1..j), j <= n, with q^K <= 2^16.
std::uint32_t default_work_ext(const CurveParams& params);

AmbientCurve make_ambient(const Curve& curve, std::uint32_t K);

// |{R in P^2(GF(q^j)) : F(R) = 0}|, with j | K.
std::uint64_t count_points(const AmbientCurve& ac, std::uint32_t j, unsigned threads = 1);

} // namespace fnc
