#pragma once

// Local analysis of the curve at a point: multiplicity, tangent cone,
// intersection multiplicity with lines, and the singular-locus census.

#include <optional>
#include <string>
#include <vector>

#include "fnc/fncurve.hpp"

namespace fnc {

// Affine chart X_pivot = 1 centred at Q: the other two coordinates become
// u0 + U and v0 + V, with (a, b) the remaining indices in increasing order.
struct LocalChart {
    int pivot = 0, a = 1, b = 2;
    FieldElement u0, v0;
};

// Throws ValidationError if Q[pivot] == 0. Default pivot: first nonzero coordinate.
LocalChart chart_at(const ProjPoint& Q, std::optional<int> pivot = std::nullopt);

// Degree-r part of F in the chart, as sum_i c[i] U^(r-i) V^i.
BinaryForm local_part(const AmbientCurve& ac, const LocalChart& chart, std::uint32_t r);

// Throws NotOnCurve when F(Q) != 0.
std::uint32_t multiplicity_at(const AmbientCurve& ac, const ProjPoint& Q, std::optional<int> pivot = std::nullopt);

struct ConeLine {
    ProjLine line;
    std::uint32_t cone_multiplicity = 0;  // multiplicity of the factor in the cone
};

struct TangentCone {
    std::uint32_t multiplicity = 0;
    LocalChart chart;
    BinaryForm cone;
    std::vector<ConeLine> lines;  // sorted by line
    bool split = false;           // all factors found in the ambient field
    bool squarefree = false;
};

TangentCone tangent_cone_at(const AmbientCurve& ac, const ProjPoint& Q);

// Order of F restricted to L at Q; 0 when Q is off the curve.
// Throws ValidationError when Q is not on L.
std::uint32_t intersection_multiplicity(const AmbientCurve& ac, const ProjLine& L, const ProjPoint& Q);

enum class SingularCase { a_i, a_ii, a_iii, b_i, b_ii, c };
std::string case_label(SingularCase c);

// The label depends only on (m > 1, in S, F_q-rational, q == 2).
SingularCase classify_singular(const CurveParams& params, bool in_S, bool in_base_plane);

// Whether the classification predicts R (of field degree j) to be singular.
bool predicted_singular(const CurveParams& params, std::uint32_t field_degree, bool in_S);

struct CaseExpectation {
    std::uint32_t multiplicity;
    bool ordinary;
    std::uint32_t tangent_count;
    std::uint32_t tangent_imult;  // intersection multiplicity of each tangent
};
CaseExpectation expected_for(const CurveParams& params, SingularCase c);

struct TangentRecord {
    ProjLine line;
    std::uint32_t imult = 0;
    std::uint32_t cone_multiplicity = 0;
};

struct SingularRecord {
    ProjPoint point;
    std::uint32_t field_degree = 1;
    std::uint32_t multiplicity = 0;
    std::vector<TangentRecord> tangents;
    bool in_S = false;
    bool in_base_plane = false;
    bool ordinary = false;
    bool cone_split = false;
    SingularCase label = SingularCase::a_i;
};

SingularRecord analyze_singular(const AmbientCurve& ac, const ProjPoint& Q);

struct SingularReport {
    std::uint32_t max_ext = 0;
    std::uint64_t scanned = 0;
    std::uint64_t predicted_count = 0;
    std::uint64_t found_count = 0;
    std::vector<SingularRecord> records;  // sorted by point
    std::vector<std::string> mismatches;
    bool match() const { return mismatches.empty() && predicted_count == found_count; }
    std::string verified_within() const;
};

// Scans P^2(GF(q^j)) for j <= max_ext and compares with the predicted
// locus. Every j <= max_ext must divide the ambient degree, and max_ext
// must reach n - m (m > 1) or n - 1 (m = 1).
SingularReport find_singular_points(const AmbientCurve& ac, std::uint32_t max_ext, unsigned threads = 1);

} // namespace fnc
