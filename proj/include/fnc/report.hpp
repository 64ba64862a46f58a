#pragma once

// JSON reports shared by the CLI and the acceptance runner, plus the text
// summaries rendered from them.

#include <json.hpp>

#include "fnc/galois.hpp"

namespace fnc {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

json provenance(const CurveParams& p, std::uint64_t seed);

json curve_report(const Curve& c, bool emit_poly);
std::string curve_text(const json& r);

json fnc_report(const Curve& c, std::uint32_t power);
std::string fnc_text(const json& r);

json singular_row(const SingularRecord& rec);
json singular_report(const AmbientCurve& ac, const SingularReport& rep);
std::string singular_text(const json& r);

json verdict_row(const GaloisVerdict& v);
json scan_report(const CurveWorkspace& ws, const std::vector<GaloisVerdict>& verdicts, std::uint64_t seed,
                 const std::string& candidates);
std::string scan_text(const json& r);

json points_report(const AmbientCurve& ac, std::uint32_t j, std::uint64_t count);
std::string points_text(const json& r);

} // namespace fnc
