#include "fnc/report.hpp"

#include <sstream>

namespace fnc {

json provenance(const CurveParams& p, std::uint64_t seed) {
    return json{{"q", p.q}, {"n", p.n}, {"m", p.m}, {"tool-version", kToolVersion}, {"seed", seed}};
}

namespace {

json params_json(const CurveParams& p) { return json{{"q", p.q}, {"n", p.n}, {"m", p.m}}; }

std::string kind_label(PointKind k) {
    switch (k) {
    case PointKind::off_curve: return "off-curve";
    case PointKind::smooth: return "smooth";
    case PointKind::singular: return "singular";
    }
    return "?";
}

} // namespace

json curve_report(const Curve& c, bool emit_poly) {
    json r = provenance(c.params, 0);
    r["params"] = params_json(c.params);
    r["degree"] = *c.F.homogeneous_degree();
    r["terms"] = c.F.term_count();
    r["fnc"] = json{{"n", check_frobenius_nonclassical(c, c.params.n)}, {"m", check_frobenius_nonclassical(c, c.params.m)}};
    if (emit_poly) r["poly"] = c.F.to_string();
    return r;
}

std::string curve_text(const json& r) {
    std::ostringstream o;
    o << "curve (n,m,q)=(" << r["n"] << "," << r["m"] << "," << r["q"] << ")\n";
    o << "degree " << r["degree"] << "\n";
    o << "terms " << r["terms"] << "\n";
    o << "nonclassical for q^n: " << (r["fnc"]["n"].get<bool>() ? "yes" : "no")
      << ", for q^m: " << (r["fnc"]["m"].get<bool>() ? "yes" : "no") << "\n";
    if (r.contains("poly")) o << "F = " << r["poly"].get<std::string>() << "\n";
    return o.str();
}

json fnc_report(const Curve& c, std::uint32_t power) {
    json r = provenance(c.params, 0);
    r["params"] = params_json(c.params);
    r["power"] = power;
    r["nonclassical"] = check_frobenius_nonclassical(c, power);
    return r;
}

std::string fnc_text(const json& r) { return std::string(r["nonclassical"].get<bool>() ? "true" : "false") + "\n"; }

json singular_row(const SingularRecord& rec) {
    json tangents = json::array();
    for (const auto& t : rec.tangents) tangents.push_back(json{{"line", t.line.to_string()}, {"imult", t.imult}});
    return json{{"point", rec.point.to_string()},
                {"mult", rec.multiplicity},
                {"case", case_label(rec.label)},
                {"ordinary", rec.ordinary},
                {"tangents", tangents},
                {"in_S", rec.in_S},
                {"in_Fq", rec.in_base_plane}};
}

json singular_report(const AmbientCurve& ac, const SingularReport& rep) {
    json r = provenance(ac.params, 0);
    r["working_field"] = ac.ctx->name();
    r["points"] = json::array();
    for (const auto& rec : rep.records) r["points"].push_back(singular_row(rec));
    r["summary"] = json{{"predicted_count", rep.predicted_count},
                        {"found_count", rep.found_count},
                        {"match", rep.match()},
                        {"scanned", rep.scanned},
                        {"verified_within", rep.verified_within()}};
    r["mismatches"] = rep.mismatches;
    r["notes"] = json::array({"at unibranch points the intersection multiplicity with the tangent stands in for the "
                              "order of the tangent on the single branch"});
    return r;
}

std::string singular_text(const json& r) {
    std::ostringstream o;
    o << "singular points of (n,m,q)=(" << r["n"] << "," << r["m"] << "," << r["q"] << ") over "
      << r["working_field"].get<std::string>() << "\n";
    for (const auto& p : r["points"]) {
        o << "  " << p["point"].get<std::string>() << "  mult " << p["mult"] << "  case " << p["case"].get<std::string>()
          << (p["ordinary"].get<bool>() ? "  ordinary" : "  unibranch") << "  tangents";
        for (const auto& t : p["tangents"]) o << " " << t["line"].get<std::string>() << "[" << t["imult"] << "]";
        o << "\n";
    }
    const auto& s = r["summary"];
    o << "predicted " << s["predicted_count"] << ", found " << s["found_count"] << ", "
      << (s["match"].get<bool>() ? "match" : "MISMATCH") << " (" << s["verified_within"].get<std::string>() << ")\n";
    for (const auto& m : r["mismatches"]) o << "  mismatch: " << m.get<std::string>() << "\n";
    return o.str();
}

json verdict_row(const GaloisVerdict& v) {
    json obs = nullptr;
    if (v.obstruction) {
        obs = json{{"rule", v.obstruction->rule},
                   {"line", v.obstruction->line ? json(v.obstruction->line->to_string()) : json(nullptr)},
                   {"witnesses", v.obstruction->witnesses},
                   {"detail", v.obstruction->detail}};
    }
    return json{{"point", v.center.to_string()},
                {"kind", kind_label(v.kind)},
                {"degree", v.degree},
                {"deck_order", v.deck_order},
                {"verdict", verdict_label(v.verdict)},
                {"obstruction", obs},
                {"lines_checked", v.lines_checked},
                {"notes", v.notes}};
}

json scan_report(const CurveWorkspace& ws, const std::vector<GaloisVerdict>& verdicts, std::uint64_t seed,
                 const std::string& candidates) {
    json r = provenance(ws.curve().params, seed);
    r["working_field"] = ws.ctx().name();
    r["candidates"] = candidates;
    r["verdicts"] = json::array();
    std::size_t g = 0, ng = 0, inc = 0;
    for (const auto& v : verdicts) {
        r["verdicts"].push_back(verdict_row(v));
        (v.verdict == Verdict::galois ? g : v.verdict == Verdict::not_galois ? ng : inc)++;
    }
    r["summary"] = json{{"galois", g}, {"not_galois", ng}, {"inconclusive", inc}};
    return r;
}

std::string scan_text(const json& r) {
    std::ostringstream o;
    for (const auto& v : r["verdicts"]) {
        o << v["point"].get<std::string>() << "  deg " << v["degree"] << "  deck " << v["deck_order"] << "  "
          << v["verdict"].get<std::string>();
        if (!v["obstruction"].is_null()) {
            const auto& ob = v["obstruction"];
            o << "  " << ob["rule"].get<std::string>();
            if (!ob["line"].is_null()) o << " on " << ob["line"].get<std::string>();
            for (const auto& w : ob["witnesses"]) o << "\n    " << w.get<std::string>();
        }
        o << "\n";
    }
    const auto& s = r["summary"];
    o << "galois " << s["galois"] << ", not galois " << s["not_galois"] << ", inconclusive " << s["inconclusive"] << "\n";
    return o.str();
}

json points_report(const AmbientCurve& ac, std::uint32_t j, std::uint64_t count) {
    json r = provenance(ac.params, 0);
    r["extension"] = j;
    r["count"] = count;
    return r;
}

std::string points_text(const json& r) { return std::to_string(r["count"].get<std::uint64_t>()) + "\n"; }

} // namespace fnc
