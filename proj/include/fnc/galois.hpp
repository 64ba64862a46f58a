#pragma once

// Projection of the curve from a point P: covering degree, branch indices
// on the lines through P, linear deck transformations, and the ramification
// rules a Galois projection has to obey.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fnc/local.hpp"

namespace fnc {

// The ambient curve plus its singular points, computed once.
class CurveWorkspace {
public:
    explicit CurveWorkspace(AmbientCurve ac, unsigned threads = 1);

    const AmbientCurve& curve() const { return ac_; }
    const FieldCtx& ctx() const { return *ac_.ctx; }
    const SingularReport& singular() const { return sing_; }
    // nullptr for smooth points and points off the curve.
    const SingularRecord* singular_at(const ProjPoint& P) const;
    // The census reproduced the predicted locus, which is then taken as
    // the whole singular locus.
    bool singular_locus_complete() const { return sing_.match(); }

private:
    AmbientCurve ac_;
    SingularReport sing_;
    std::map<ProjPoint, std::size_t> index_;
};

enum class BranchSource { smooth_exact, unibranch_exact, ordinary_split, candidate_sets, center_smooth, center_singular };
std::string source_label(BranchSource s);

struct BranchIndex {
    // Unset for simple intersections outside the ambient field.
    std::optional<ProjPoint> point;
    std::uint32_t branch_id = 0;
    // One value when exact; otherwise the admissible values.
    std::vector<std::uint32_t> e;
    BranchSource source = BranchSource::smooth_exact;

    bool exact() const { return e.size() == 1; }
    bool smooth() const { return source == BranchSource::smooth_exact; }
    std::string describe() const;
};

struct FiberData {
    ProjLine line;
    std::vector<BranchIndex> branches;
    // False when part of F.L is a repeated factor not split in the ambient
    // field; those points are then missing from the branches.
    bool complete = true;
    std::uint32_t unresolved_degree = 0;
    std::uint32_t needed_ext = 0;  // q-power degree that splits the rest, 0 if beyond the search
};

enum class PointKind { off_curve, smooth, singular };

struct CenterInfo {
    ProjPoint point;
    PointKind kind = PointKind::off_curve;
    std::uint32_t multiplicity = 0;
    std::uint32_t degree = 0;  // deg F - multiplicity
    // Tangent lines at P with the index of the center branch on each.
    std::vector<std::pair<ProjLine, std::uint32_t>> center_branches;
    bool tangents_split = true;
};

CenterInfo analyze_center(const CurveWorkspace& ws, const ProjPoint& P);

std::uint32_t projection_degree(const CurveWorkspace& ws, const ProjPoint& P);

struct ProfileOptions {
    // Throw UnsplitFiber instead of returning a partial fiber.
    bool strict = false;
    // Report singular branches through the candidate sets a Galois
    // projection would allow, instead of their computed values.
    bool candidate_sets = false;
};

FiberData ramification_profile(const CurveWorkspace& ws, const CenterInfo& center, const ProjLine& L,
                               const ProfileOptions& opts = {});
FiberData ramification_profile(const CurveWorkspace& ws, const ProjPoint& P, const ProjLine& L,
                               const ProfileOptions& opts = {});

// y -> gamma x + mu y + beta z in the frame where P = (0 : 1 : 0).
struct DeckElement {
    FieldElement gamma, mu, beta;
    Mat3 matrix;  // acting on the original coordinates, normalized
    FieldElement lambda;
};

struct DeckGroup {
    Mat3 frame;  // M with M (0,1,0)^T = P
    std::vector<DeckElement> elements;
    bool closed = false;
    bool fixes_pencil = false;
    // sigma sigma' = sigma_(sum) and tau sigma tau^-1 = sigma_(mu gamma, mu beta)
    bool semidirect_relations = false;
};

// Shears with gamma, beta in GF(q^search_ext) and mu in GF(q^search_ext)^*.
DeckGroup linear_deck_group(const CurveWorkspace& ws, const ProjPoint& P, std::uint32_t search_ext);

enum class Verdict { galois, not_galois, inconclusive };
std::string verdict_label(Verdict v);

struct Obstruction {
    std::string rule;  // R1-divisibility ... R6-no-ramification
    std::optional<ProjLine> line;
    std::vector<std::string> witnesses;
    std::string detail;
};

struct GaloisVerdict {
    ProjPoint center;
    PointKind kind = PointKind::off_curve;
    std::uint32_t degree = 0;
    std::uint32_t deck_order = 0;
    bool relations_hold = false;
    Verdict verdict = Verdict::inconclusive;
    std::optional<Obstruction> obstruction;
    std::uint32_t lines_checked = 0;
    std::uint32_t lines_partial = 0;
    std::vector<std::string> notes;
};

GaloisVerdict certify_galois(const CurveWorkspace& ws, const ProjPoint& P, std::uint32_t search_ext);

struct ObstructionOptions {
    std::uint64_t seed = 0;
    std::uint32_t random_lines = 200;
    bool candidate_sets = false;
    bool use_no_ramification_rule = true;
};

GaloisVerdict obstruction_check(const CurveWorkspace& ws, const ProjPoint& P, const ObstructionOptions& opts = {});

// Rules R1-R5 on one fiber; nullopt when the fiber is consistent with a
// Galois projection.
std::optional<Obstruction> check_fiber(const CurveWorkspace& ws, const CenterInfo& center, const FiberData& fiber);

struct ScanOptions {
    std::uint32_t search_ext = 1;
    ObstructionOptions obstruction;
    unsigned threads = 1;
};

// Distinct random points of the working plane that are off the curve.
std::vector<ProjPoint> sample_off_curve(const CurveWorkspace& ws, std::size_t count, std::uint64_t seed);

// Positive then negative engine per candidate. Throws ConsistencyError if a
// candidate is certified both ways.
std::vector<GaloisVerdict> scan(const CurveWorkspace& ws, const std::vector<ProjPoint>& candidates,
                                const ScanOptions& opts = {});

} // namespace fnc
