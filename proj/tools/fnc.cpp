// fnc: command-line front end.
//
// Exit codes: 0 success, 1 bad input, 2 internal consistency failure,
// 3 scan with --strict left a candidate undecided.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "fnc/report.hpp"

using namespace fnc;

namespace {

struct Common {
    std::uint64_t q = 0;
    std::uint32_t n = 0, m = 0;
    std::string format = "text";
    std::string output;
    unsigned threads = 0;
    std::uint32_t work_ext = 0;
};

void add_params(CLI::App* app, Common& c) {
    app->add_option("-q", c.q, "field size q (a prime power)")->required();
    app->add_option("-n", c.n, "exponent n")->required();
    app->add_option("-m", c.m, "exponent m")->required();
    app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app->add_option("--output,-o", c.output, "write the report here instead of stdout");
}

void add_work(CLI::App* app, Common& c) {
    app->add_option("--work-ext", c.work_ext, "working field GF(q^K); default picks the largest lcm(1..j) that fits 2^16");
    app->add_option("--threads", c.threads, "worker threads (falls back to FNC_GALOIS_THREADS, then 1)");
}

unsigned thread_count(const Common& c) {
    if (c.threads > 0) return c.threads;
    if (const char* env = std::getenv("FNC_GALOIS_THREADS")) {
        try {
            const int t = std::stoi(env);
            if (t > 0) return static_cast<unsigned>(t);
        } catch (const std::exception&) {
        }
        throw ValidationError(std::string("FNC_GALOIS_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

void emit(const Common& c, const json& r, const std::string& text) {
    const std::string body = c.format == "json" ? r.dump(2) + "\n" : text;
    if (c.output.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(c.output);
    if (!f) throw ValidationError("cannot write " + c.output);
    f << body;
}

CurveWorkspace workspace(const Curve& curve, const Common& c) {
    const std::uint32_t K = c.work_ext ? c.work_ext : default_work_ext(curve.params);
    return CurveWorkspace(make_ambient(curve, K), thread_count(c));
}

std::vector<ProjPoint> read_points(const FieldCtx& F, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read candidate file " + path);
    std::vector<ProjPoint> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(parse_point(F, line.substr(first)));
    }
    return out;
}

std::vector<ProjPoint> candidates_for(const CurveWorkspace& ws, const std::string& spec, std::uint64_t seed) {
    const FieldCtx& F = ws.ctx();
    const std::uint64_t q = ws.curve().q();
    if (spec == "base") return enumerate_plane(F, q, 1);
    auto tail = [&](const char* prefix) { return spec.substr(std::string(prefix).size()); };
    auto number = [&](const std::string& s) {
        try {
            return std::stoul(s);
        } catch (const std::exception&) {
            throw ValidationError("bad number in --candidates " + spec);
        }
    };
    if (spec.rfind("ext:", 0) == 0) {
        const auto j = static_cast<std::uint32_t>(number(tail("ext:")));
        if (j < 1 || ws.curve().K % j != 0) throw ValidationError("ext:J needs J dividing the working degree");
        return enumerate_plane(F, q, j);
    }
    if (spec.rfind("file:", 0) == 0) return read_points(F, tail("file:"));
    if (spec.rfind("offcurve:", 0) == 0) return sample_off_curve(ws, number(tail("offcurve:")), seed);
    throw ValidationError("--candidates must be base, ext:J, file:PATH or offcurve:N");
}

ProjPoint point_arg(const CurveWorkspace& ws, const std::string& text, std::uint32_t point_field) {
    if (point_field == 0) return parse_point(ws.ctx(), text);
    const auto& ac = ws.curve();
    if (ac.K % point_field != 0) throw ValidationError("--point-field must divide the working degree");
    const auto src = FieldCtx::create(ac.params.p, ac.params.e * point_field);
    const FieldEmbedding emb(src, ac.ctx);
    return ProjPoint(map(parse_point(*src, text).v, emb));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius nonclassical curves: construction, singularities and Galois points"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Common c;

    auto* curve = app.add_subcommand("curve", "build the curve or test nonclassicality");
    curve->require_subcommand(1);
    bool emit_poly = false;
    auto* build = curve->add_subcommand("build", "print degree, term count and optionally F");
    add_params(build, c);
    build->add_flag("--emit-poly", emit_poly, "print the full polynomial");
    std::uint32_t power = 0;
    auto* check = curve->add_subcommand("check-fnc", "test q^N-Frobenius nonclassicality");
    add_params(check, c);
    check->add_option("--power", power, "N")->required();

    auto* sing = app.add_subcommand("sing", "singular points");
    sing->require_subcommand(1);
    std::uint32_t max_ext = 0;
    auto* sreport = sing->add_subcommand("report", "classify the singular points");
    add_params(sreport, c);
    add_work(sreport, c);
    sreport->add_option("--max-ext", max_ext, "scan P^2(GF(q^j)) for j up to this (default n-1)");

    auto* gal = app.add_subcommand("galois", "Galois points");
    gal->require_subcommand(1);
    std::string point_text;
    std::uint32_t search_ext = 1, point_field = 0, random_lines = 200;
    std::uint64_t seed = 0;
    std::string cand_spec = "base";
    bool strict = false;
    auto* certify = gal->add_subcommand("certify", "decide one center");
    add_params(certify, c);
    add_work(certify, c);
    certify->add_option("--point", point_text, "center as (a : b : c)")->required();
    certify->add_option("--point-field", point_field, "read coordinates in GF(q^J) instead of the working field");
    auto* gscan = gal->add_subcommand("scan", "decide a set of centers");
    add_params(gscan, c);
    add_work(gscan, c);
    gscan->add_option("--candidates", cand_spec, "base | ext:J | file:PATH | offcurve:N");
    gscan->add_flag("--strict", strict, "exit 3 if any candidate stays undecided");
    for (auto* sub : {certify, gscan}) {
        sub->add_option("--search-ext", search_ext, "deck search over GF(q^S)");
        sub->add_option("--seed", seed, "seed for sampled lines and points");
        sub->add_option("--random-lines", random_lines, "budget of random lines per center");
    }

    auto* points = app.add_subcommand("points", "rational points");
    points->require_subcommand(1);
    std::uint32_t count_ext = 1;
    auto* pcount = points->add_subcommand("count", "count points of F over GF(q^j)");
    add_params(pcount, c);
    add_work(pcount, c);
    pcount->add_option("-j", count_ext, "extension degree j");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        const Curve cv = build_curve(CurveParams::make(c.q, c.n, c.m));
        if (build->parsed()) {
            const json r = curve_report(cv, emit_poly);
            emit(c, r, curve_text(r));
        } else if (check->parsed()) {
            const json r = fnc_report(cv, power);
            emit(c, r, fnc_text(r));
        } else if (sreport->parsed()) {
            const std::uint32_t K = c.work_ext ? c.work_ext : default_work_ext(cv.params);
            const AmbientCurve ac = make_ambient(cv, K);
            const std::uint32_t E = max_ext ? max_ext : cv.params.n - 1;
            const json r = singular_report(ac, find_singular_points(ac, E, thread_count(c)));
            emit(c, r, singular_text(r));
            if (!r["summary"]["match"].get<bool>()) return 2;
        } else if (certify->parsed() || gscan->parsed()) {
            const CurveWorkspace ws = workspace(cv, c);
            ScanOptions so;
            so.search_ext = search_ext;
            so.threads = thread_count(c);
            so.obstruction.seed = seed;
            so.obstruction.random_lines = random_lines;
            std::vector<ProjPoint> cands;
            std::string label;
            if (certify->parsed()) {
                cands.push_back(point_arg(ws, point_text, point_field));
                label = "point";
            } else {
                cands = candidates_for(ws, cand_spec, seed);
                label = cand_spec;
            }
            const auto verdicts = scan(ws, cands, so);
            const json r = scan_report(ws, verdicts, seed, label);
            emit(c, r, scan_text(r));
            if (strict && r["summary"]["inconclusive"].get<std::size_t>() > 0) return 3;
        } else if (pcount->parsed()) {
            const std::uint32_t K = c.work_ext ? c.work_ext : default_work_ext(cv.params);
            const AmbientCurve ac = make_ambient(cv, K);
            const json r = points_report(ac, count_ext, count_points(ac, count_ext, thread_count(c)));
            emit(c, r, points_text(r));
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
