#include "fnc/galois.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <tuple>

namespace fnc {

// ------------------------------------------------------------ workspace

CurveWorkspace::CurveWorkspace(AmbientCurve ac, unsigned threads) : ac_(std::move(ac)) {
    sing_ = find_singular_points(ac_, ac_.params.n - 1, threads);
    for (std::size_t i = 0; i < sing_.records.size(); ++i) index_.emplace(sing_.records[i].point, i);
}

const SingularRecord* CurveWorkspace::singular_at(const ProjPoint& P) const {
    auto it = index_.find(P);
    return it == index_.end() ? nullptr : &sing_.records[it->second];
}

std::string source_label(BranchSource s) {
    switch (s) {
    case BranchSource::smooth_exact: return "smooth-exact";
    case BranchSource::unibranch_exact: return "unibranch-exact";
    case BranchSource::ordinary_split: return "ordinary-split";
    case BranchSource::candidate_sets: return "candidate-sets";
    case BranchSource::center_smooth: return "center-smooth";
    case BranchSource::center_singular: return "center-singular";
    }
    return "?";
}

std::string BranchIndex::describe() const {
    std::string s = point ? point->to_string() : std::string("(point outside the working field)");
    if (branch_id > 0 || source == BranchSource::ordinary_split) s += "#" + std::to_string(branch_id);
    s += " e=";
    if (exact()) {
        s += std::to_string(e[0]);
    } else {
        s += "{";
        for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
        s += "}";
    }
    return s + " [" + source_label(source) + "]";
}

std::string verdict_label(Verdict v) {
    switch (v) {
    case Verdict::galois: return "GALOIS-certified";
    case Verdict::not_galois: return "NOT-GALOIS-certified";
    case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

std::uint32_t ipow32(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return static_cast<std::uint32_t>(r);
}

// Values a unibranch singular point may take on any line through it.
std::vector<std::uint32_t> admissible_indices(const CurveParams& P, SingularCase c) {
    const std::uint32_t qm = ipow32(P.q, P.m);
    switch (c) {
    case SingularCase::a_i:
    case SingularCase::b_i:
    case SingularCase::c: return {qm, qm + 1};
    case SingularCase::a_ii:
    case SingularCase::b_ii: return {qm - 1, qm};
    case SingularCase::a_iii: return {1};
    }
    return {};
}

bool is_fq_line(const ProjLine& L, std::uint64_t q) { return field_of_definition(L, q) == 1; }

ProjLine gradient_line(const AmbientCurve& ac, const ProjPoint& P) {
    return ProjLine(Vec3{ac.Fx.eval(P.v), ac.Fy.eval(P.v), ac.Fz.eval(P.v)});
}

} // namespace

// ------------------------------------------------------------ centers

CenterInfo analyze_center(const CurveWorkspace& ws, const ProjPoint& P) {
    const AmbientCurve& ac = ws.curve();
    if (&P.ctx() != ac.ctx.get()) throw FieldMismatch();
    CenterInfo c;
    c.point = P;
    if (!ac.on_curve(P)) {
        c.kind = PointKind::off_curve;
        c.degree = ac.degree();
        return c;
    }
    const SingularRecord* rec = ws.singular_at(P);
    std::optional<SingularRecord> fresh;
    if (!rec && ac.is_singular(P)) {
        fresh = analyze_singular(ac, P);
        rec = &*fresh;
    }
    if (!rec) {
        c.kind = PointKind::smooth;
        c.multiplicity = 1;
        c.degree = ac.degree() - 1;
        const ProjLine T = gradient_line(ac, P);
        c.center_branches.emplace_back(T, intersection_multiplicity(ac, T, P) - 1);
        return c;
    }
    c.kind = PointKind::singular;
    c.multiplicity = rec->multiplicity;
    c.degree = ac.degree() - rec->multiplicity;
    const bool unibranch = !rec->ordinary && rec->tangents.size() == 1 && rec->tangents[0].cone_multiplicity == rec->multiplicity;
    c.tangents_split = rec->cone_split && (rec->ordinary || unibranch);
    if (c.tangents_split) {
        // Each branch meets its tangent with order I - (mu - 1) and other
        // lines through P with order 1 (ordinary); a single branch meets
        // generic lines with order mu (unibranch). Either way e = I - mu.
        for (const auto& t : rec->tangents) c.center_branches.emplace_back(t.line, t.imult - rec->multiplicity);
    }
    return c;
}

std::uint32_t projection_degree(const CurveWorkspace& ws, const ProjPoint& P) { return analyze_center(ws, P).degree; }

// ------------------------------------------------------------ fibers

FiberData ramification_profile(const CurveWorkspace& ws, const ProjPoint& P, const ProjLine& L,
                               const ProfileOptions& opts) {
    return ramification_profile(ws, analyze_center(ws, P), L, opts);
}

FiberData ramification_profile(const CurveWorkspace& ws, const CenterInfo& center, const ProjLine& L,
                               const ProfileOptions& opts) {
    const AmbientCurve& ac = ws.curve();
    const FieldCtx& F = *ac.ctx;
    const ProjPoint& P = center.point;
    if (!L.contains(P)) throw ValidationError("line " + L.to_string() + " does not pass through " + P.to_string());
    FiberData fd;
    fd.line = L;

    const ProjPoint D = other_point_on_line(L, P);
    BinaryForm G = restrict_to_line(ac.F, P.v, D.v);
    const std::uint32_t at_center = vanish_order(G, F.one(), F.zero());
    G = divide_root(G, F.one(), F.zero(), at_center);

    const RootReport rep = squarefree_and_roots(G);
    for (const auto& root : rep.roots) {
        const ProjPoint Q(Vec3{root.s * P.v[0] + root.t * D.v[0], root.s * P.v[1] + root.t * D.v[1],
                               root.s * P.v[2] + root.t * D.v[2]});
        const std::uint32_t I = root.multiplicity;
        const SingularRecord* rec = ws.singular_at(Q);
        if (!rec && I >= 2 && ac.is_singular(Q)) {
            throw ConsistencyError("singular point " + Q.to_string() + " missing from the singular census");
        }
        if (!rec) {
            fd.branches.push_back({Q, 0, {I}, BranchSource::smooth_exact});
            continue;
        }
        if (rec->ordinary) {
            const std::uint32_t mu = rec->multiplicity;
            const bool tangent = std::any_of(rec->tangents.begin(), rec->tangents.end(),
                                             [&](const TangentRecord& t) { return t.line == L; });
            if (tangent ? I < mu : I != mu) {
                throw ConsistencyError("intersection order " + std::to_string(I) + " at ordinary point " + Q.to_string() +
                                       " does not fit its branches");
            }
            for (std::uint32_t b = 0; b < mu; ++b) {
                const std::uint32_t e = (tangent && b == 0) ? I - (mu - 1) : 1;
                if (opts.candidate_sets) {
                    fd.branches.push_back({Q, b, admissible_indices(ac.params, rec->label), BranchSource::candidate_sets});
                } else {
                    fd.branches.push_back({Q, b, {e}, BranchSource::ordinary_split});
                }
            }
            continue;
        }
        const auto allowed = admissible_indices(ac.params, rec->label);
        if (std::find(allowed.begin(), allowed.end(), I) == allowed.end()) {
            throw ConsistencyError("unibranch point " + Q.to_string() + " has order " + std::to_string(I) +
                                   " outside its case values");
        }
        if (opts.candidate_sets) {
            fd.branches.push_back({Q, 0, allowed, BranchSource::candidate_sets});
        } else {
            fd.branches.push_back({Q, 0, {I}, BranchSource::unibranch_exact});
        }
    }

    BinaryForm H = G;
    for (const auto& root : rep.roots) H = divide_root(H, root.s, root.t, root.multiplicity);
    if (H.degree() > 0) {
        if (is_squarefree(H)) {
            // Simple roots are transversal meetings with smooth points.
            for (std::uint32_t i = 0; i < H.degree(); ++i) fd.branches.push_back({std::nullopt, 0, {1}, BranchSource::smooth_exact});
        } else {
            const std::uint32_t j = splitting_degree(H, 8);
            fd.needed_ext = j * ac.K;
            fd.complete = false;
            fd.unresolved_degree = H.degree();
            if (opts.strict) {
                throw UnsplitFiber("fiber over " + L.to_string() + " has a repeated factor of degree " +
                                       std::to_string(H.degree()) + " not split over GF(q^" + std::to_string(ac.K) + ")",
                                   fd.needed_ext);
            }
        }
    }

    for (const auto& [T, e] : center.center_branches) {
        if (T == L && e >= 1) {
            const BranchSource src =
                center.kind == PointKind::smooth ? BranchSource::center_smooth : BranchSource::center_singular;
            std::uint32_t id = 0;
            for (const auto& b : fd.branches) {
                if (b.point && *b.point == P) ++id;
            }
            fd.branches.push_back({P, id, {e}, src});
        }
    }
    return fd;
}

// ------------------------------------------------------------ rules

std::optional<Obstruction> check_fiber(const CurveWorkspace& ws, const CenterInfo& center, const FiberData& fiber) {
    const std::uint32_t deg = center.degree;
    const std::uint64_t q = ws.curve().q();
    auto obs = [&](const char* rule, std::vector<std::string> w, std::string detail) {
        return Obstruction{rule, fiber.line, std::move(w), std::move(detail)};
    };

    for (const auto& b : fiber.branches) {
        const bool any_divides = std::any_of(b.e.begin(), b.e.end(), [&](std::uint32_t e) { return deg % e == 0; });
        if (!any_divides) {
            return obs("R1-divisibility", {b.describe()},
                       "ramification index does not divide the covering degree " + std::to_string(deg));
        }
    }

    const BranchIndex* first_exact = nullptr;
    for (const auto& b : fiber.branches) {
        if (!b.exact()) continue;
        if (first_exact && first_exact->e[0] != b.e[0]) {
            return obs("R2-equal-indices", {first_exact->describe(), b.describe()},
                       "two branches over the same line have different indices");
        }
        if (!first_exact) first_exact = &b;
    }
    std::set<std::uint32_t> common;
    bool first = true;
    for (const auto& b : fiber.branches) {
        std::set<std::uint32_t> s(b.e.begin(), b.e.end());
        if (first) {
            common = s;
            first = false;
        } else {
            std::set<std::uint32_t> keep;
            std::set_intersection(common.begin(), common.end(), s.begin(), s.end(), std::inserter(keep, keep.end()));
            common.swap(keep);
        }
    }
    if (!fiber.branches.empty() && common.empty()) {
        std::vector<std::string> w;
        for (const auto& b : fiber.branches) w.push_back(b.describe());
        return obs("R2-equal-indices", w, "no index value is admissible for every branch over the line");
    }

    if (fiber.complete) {
        const std::uint64_t count = fiber.branches.size();
        const bool fits = std::any_of(common.begin(), common.end(), [&](std::uint32_t c) { return c * count == deg; });
        if (!fits) {
            std::vector<std::string> w;
            for (const auto& b : fiber.branches) w.push_back(b.describe());
            return obs("R3-fiber-sum", w,
                       std::to_string(count) + " branches with a common index cannot sum to " + std::to_string(deg));
        }
    }

    const bool line_fq = is_fq_line(fiber.line, q);
    if (center.kind != PointKind::smooth && !line_fq) {
        for (const auto& b : fiber.branches) {
            if (b.smooth() && b.exact() && b.e[0] >= 2) {
                return obs("R4-rationality", {b.describe()},
                           "smooth ramification point on a line through the center that is not defined over F_q");
            }
        }
    }
    if (center.kind == PointKind::smooth && !line_fq) {
        for (const auto& b : fiber.branches) {
            if (b.source == BranchSource::center_smooth && b.e[0] >= 2) {
                return obs("R5-tangent-rationality", {b.describe()},
                           "the center ramifies on its tangent line, which is not defined over F_q");
            }
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------ deck group

namespace {

Mat3 shear(const FieldCtx& F, const FieldElement& g, const FieldElement& mu, const FieldElement& b) {
    Mat3 S = identity3(F);
    S[1][0] = g;
    S[1][1] = mu;
    S[1][2] = b;
    return S;
}

Mat3 frame_for(const ProjPoint& P) {
    const FieldCtx& F = P.ctx();
    const std::pair<int, int> pairs[] = {{0, 2}, {0, 1}, {1, 2}};
    for (auto [a, b] : pairs) {
        Mat3 M;
        for (int i = 0; i < 3; ++i) {
            M[i][0] = i == a ? F.one() : F.zero();
            M[i][1] = P.v[i];
            M[i][2] = i == b ? F.one() : F.zero();
        }
        if (!det(M).is_zero()) return M;
    }
    throw ValidationError("no coordinate frame for " + P.to_string());
}

std::mt19937_64 rng_for(std::uint64_t seed, const ProjPoint& P, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), P.v[0].code(),
                      P.v[1].code(), P.v[2].code(), static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
}

Vec3 random_vec(const FieldCtx& F, std::mt19937_64& rng) {
    return {F.from_code(rng() % F.size()), F.from_code(rng() % F.size()), F.from_code(rng() % F.size())};
}

} // namespace

DeckGroup linear_deck_group(const CurveWorkspace& ws, const ProjPoint& P, std::uint32_t search_ext) {
    const AmbientCurve& ac = ws.curve();
    const FieldCtx& F = *ac.ctx;
    if (search_ext < 1 || ac.K % search_ext != 0) {
        throw ValidationError("search extension " + std::to_string(search_ext) + " must divide the working degree " +
                              std::to_string(ac.K));
    }
    DeckGroup g;
    g.frame = frame_for(P);
    const Mat3 Minv = inverse(g.frame);
    const auto els = subfield_elements(F, ac.q(), search_ext);

    // Quick filter: F(A v) / F(v) must not depend on v.
    auto rng = rng_for(0x5eed, P, 1);
    std::vector<std::pair<Vec3, FieldElement>> probes;
    while (probes.size() < 4) {
        const Vec3 v = random_vec(F, rng);
        const FieldElement fv = ac.F.eval(v);
        if (!fv.is_zero()) probes.emplace_back(v, fv);
    }

    for (const auto& gam : els) {
        for (const auto& mu : els) {
            if (mu.is_zero()) continue;
            for (const auto& beta : els) {
                const Mat3 A = normalize_projective(g.frame * shear(F, gam, mu, beta) * Minv);
                const FieldElement f0 = ac.F.eval(A * probes[0].first);
                if (f0.is_zero()) continue;
                bool ok = true;
                for (std::size_t i = 1; i < probes.size() && ok; ++i) {
                    ok = ac.F.eval(A * probes[i].first) * probes[0].second == f0 * probes[i].second;
                }
                if (!ok) continue;
                if (auto lambda = stabilizes(ac.F, A)) g.elements.push_back({gam, mu, beta, A, *lambda});
            }
        }
    }

    using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;
    std::set<Key> params;
    std::set<std::vector<std::uint32_t>> mats;
    auto mat_key = [](const Mat3& A) {
        std::vector<std::uint32_t> k;
        for (const auto& row : A) {
            for (const auto& e : row) k.push_back(e.code());
        }
        return k;
    };
    for (const auto& d : g.elements) {
        params.insert({d.gamma.code(), d.mu.code(), d.beta.code()});
        mats.insert(mat_key(d.matrix));
    }

    g.closed = true;
    for (const auto& a : g.elements) {
        for (const auto& b : g.elements) {
            const Key k{(a.gamma + a.mu * b.gamma).code(), (a.mu * b.mu).code(), (a.beta + a.mu * b.beta).code()};
            if (!params.count(k) || !mats.count(mat_key(normalize_projective(a.matrix * b.matrix)))) {
                g.closed = false;
                break;
            }
        }
        if (!g.closed) break;
    }

    g.fixes_pencil = true;
    std::vector<ProjLine> pencil;
    for (const auto& R : {make_point(F, 1, 0, 0), make_point(F, 0, 0, 1), make_point(F, 1, 0, 1), make_point(F, 0, 1, 0)}) {
        if (!(R == P) && pencil.size() < 3) pencil.push_back(line_through(P, R));
    }
    for (const auto& d : g.elements) {
        for (const auto& L : pencil) {
            const ProjPoint R = other_point_on_line(L, P);
            if (!L.contains(ProjPoint(d.matrix * R.v))) g.fixes_pencil = false;
        }
    }

    // Split into sigma (mu = 1) and tau (gamma = beta = 0) parts.
    std::vector<const DeckElement*> sigmas, taus;
    for (const auto& d : g.elements) {
        if (d.mu.is_one()) sigmas.push_back(&d);
        if (d.gamma.is_zero() && d.beta.is_zero()) taus.push_back(&d);
    }
    bool rel = !g.elements.empty() && sigmas.size() * taus.size() == g.elements.size();
    for (const auto* s1 : sigmas) {
        for (const auto* s2 : sigmas) {
            if (!rel) break;
            const Mat3 prod = shear(F, s1->gamma, F.one(), s1->beta) * shear(F, s2->gamma, F.one(), s2->beta);
            const Mat3 want = shear(F, s1->gamma + s2->gamma, F.one(), s1->beta + s2->beta);
            rel = prod == want && params.count({want[1][0].code(), 1u, want[1][2].code()});
        }
    }
    for (const auto* t : taus) {
        for (const auto* s : sigmas) {
            if (!rel) break;
            const Mat3 T = shear(F, F.zero(), t->mu, F.zero());
            const Mat3 conj = T * shear(F, s->gamma, F.one(), s->beta) * inverse(T);
            const Mat3 want = shear(F, t->mu * s->gamma, F.one(), t->mu * s->beta);
            rel = conj == want && params.count({want[1][0].code(), 1u, want[1][2].code()});
        }
    }
    g.semidirect_relations = rel;
    return g;
}

GaloisVerdict certify_galois(const CurveWorkspace& ws, const ProjPoint& P, std::uint32_t search_ext) {
    const CenterInfo c = analyze_center(ws, P);
    GaloisVerdict v;
    v.center = P;
    v.kind = c.kind;
    v.degree = c.degree;
    const DeckGroup g = linear_deck_group(ws, P, search_ext);
    v.deck_order = static_cast<std::uint32_t>(g.elements.size());
    v.relations_hold = g.semidirect_relations;
    if (v.deck_order == v.degree && g.closed && g.fixes_pencil) {
        v.verdict = Verdict::galois;
        if (!g.semidirect_relations) v.notes.push_back("deck group does not have the shear-by-scaling product shape");
    }
    return v;
}

// ------------------------------------------------------------ negative engine

GaloisVerdict obstruction_check(const CurveWorkspace& ws, const ProjPoint& P, const ObstructionOptions& opts) {
    const AmbientCurve& ac = ws.curve();
    const FieldCtx& F = *ac.ctx;
    const CenterInfo c = analyze_center(ws, P);
    GaloisVerdict v;
    v.center = P;
    v.kind = c.kind;
    v.degree = c.degree;
    if (c.degree < 2) {
        v.notes.push_back("projection has degree below 2");
        return v;
    }
    const ProfileOptions popts{false, opts.candidate_sets};

    std::set<ProjLine> seen;
    // Lines on which a ramification point must lie if the projection is
    // Galois: through singular points, tangent at P, or defined over F_q.
    std::vector<ProjLine> forced;
    for (const auto& rec : ws.singular().records) {
        if (!(rec.point == P)) forced.push_back(line_through(P, rec.point));
    }
    for (const auto& [T, e] : c.center_branches) forced.push_back(T);
    for (const auto& L : fq_lines(F, ac.q())) {
        if (L.contains(P)) forced.push_back(L);
    }

    bool all_unramified = true;
    auto visit = [&](const ProjLine& L) -> std::optional<Obstruction> {
        if (!seen.insert(L).second) return std::nullopt;
        const FiberData fd = ramification_profile(ws, c, L, popts);
        ++v.lines_checked;
        if (!fd.complete) ++v.lines_partial;
        if (auto o = check_fiber(ws, c, fd)) return o;
        const bool unramified = fd.complete && std::all_of(fd.branches.begin(), fd.branches.end(), [](const BranchIndex& b) {
                                    return b.exact() && b.e[0] == 1;
                                });
        if (!unramified) all_unramified = false;
        return std::nullopt;
    };

    for (const auto& L : forced) {
        if (auto o = visit(L)) {
            v.verdict = Verdict::not_galois;
            v.obstruction = std::move(o);
            return v;
        }
    }
    if (v.lines_partial > 0) all_unramified = false;

    if (opts.use_no_ramification_rule && c.kind != PointKind::smooth && ws.singular_locus_complete() &&
        c.tangents_split && all_unramified) {
        v.verdict = Verdict::not_galois;
        const std::string witness =
            seen.empty() ? std::string("no line through the center meets a singular point or is defined over F_q")
                         : std::to_string(seen.size()) + " lines through singular points, tangents at the center and "
                                                         "F_q-lines, all unramified";
        v.obstruction = Obstruction{"R6-no-ramification", std::nullopt, {witness},
                                    "a Galois projection of degree " + std::to_string(c.degree) +
                                        " must ramify, and every place it could ramify is unramified"};
        v.notes.push_back("singular locus taken as complete beyond the census range");
        return v;
    }

    auto rng = rng_for(opts.seed, P, 2);
    for (std::uint32_t i = 0; i < opts.random_lines; ++i) {
        const Vec3 r = random_vec(F, rng);
        if (is_zero(r)) continue;
        const ProjPoint R(r);
        if (R == P) continue;
        if (auto o = visit(line_through(P, R))) {
            v.verdict = Verdict::not_galois;
            v.obstruction = std::move(o);
            return v;
        }
    }
    if (v.lines_partial > 0) {
        v.notes.push_back(std::to_string(v.lines_partial) + " lines had fibers not split over the working field");
    }
    return v;
}

std::vector<ProjPoint> sample_off_curve(const CurveWorkspace& ws, std::size_t count, std::uint64_t seed) {
    const FieldCtx& F = ws.ctx();
    std::mt19937_64 rng(seed);
    std::set<ProjPoint> seen;
    std::vector<ProjPoint> out;
    while (out.size() < count) {
        const Vec3 v = random_vec(F, rng);
        if (is_zero(v)) continue;
        const ProjPoint P(v);
        if (ws.curve().on_curve(P) || !seen.insert(P).second) continue;
        out.push_back(P);
    }
    return out;
}

std::vector<GaloisVerdict> scan(const CurveWorkspace& ws, const std::vector<ProjPoint>& candidates,
                                const ScanOptions& opts) {
    std::vector<GaloisVerdict> out(candidates.size());
    std::vector<std::exception_ptr> errors(candidates.size());
    const unsigned threads = std::max(1u, opts.threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < candidates.size(); i += threads) {
                try {
                    const GaloisVerdict pos = certify_galois(ws, candidates[i], opts.search_ext);
                    GaloisVerdict neg = obstruction_check(ws, candidates[i], opts.obstruction);
                    if (pos.verdict == Verdict::galois && neg.verdict == Verdict::not_galois) {
                        throw ConsistencyError(candidates[i].to_string() + " certified both Galois and not Galois (" +
                                               neg.obstruction->rule + ")");
                    }
                    neg.deck_order = pos.deck_order;
                    neg.relations_hold = pos.relations_hold;
                    if (pos.verdict == Verdict::galois) {
                        neg.verdict = Verdict::galois;
                        for (const auto& n : pos.notes) neg.notes.push_back(n);
                    }
                    out[i] = std::move(neg);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace fnc
