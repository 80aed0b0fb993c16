#include "lemni/cli_app.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lemni/criteria.hpp"
#include "lemni/harness.hpp"

namespace lemni::cli {

namespace {

Cx parse_complex_impl(std::string text) {
    auto fail = [&] { throw InvalidParams("cannot parse complex value \"" + text + "\""); };
    if (text.empty()) fail();
    if (text.front() == '(') {
        if (text.back() != ')') fail();
        const auto comma = text.find(',');
        if (comma == std::string::npos) fail();
        try {
            return Cx(std::stod(text.substr(1, comma - 1)),
                      std::stod(text.substr(comma + 1, text.size() - comma - 2)));
        } catch (const std::exception &) {
            fail();
        }
    }
    try {
        std::size_t used = 0;
        double re = std::stod(text, &used);
        if (used != text.size()) fail();
        return Cx(re, 0.0);
    } catch (const std::exception &) {
        fail();
    }
    return {};
}

// Splits "k1=v1,k2=v2,..." keeping commas inside (...) intact.
std::vector<std::string> split_top_level(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

struct KeyValues {
    std::vector<std::pair<std::string, std::string>> items;

    std::string get(const std::string &key, const std::string &fallback = "") const {
        for (const auto &[k, v] : items)
            if (k == key) return v;
        return fallback;
    }
    bool has(const std::string &key) const {
        for (const auto &[k, v] : items)
            if (k == key) return true;
        return false;
    }
};

KeyValues parse_kv(const std::string &body) {
    KeyValues kv;
    for (const std::string &part : split_top_level(body, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw InvalidParams("expected key=value in function spec, got \"" + part + "\"");
        kv.items.emplace_back(part.substr(0, eq), part.substr(eq + 1));
    }
    return kv;
}

} // namespace

Cx parse_complex(const std::string &text) { return parse_complex_impl(text); }

AnalyticMap parse_function_spec(const std::string &spec) {
    if (spec.empty()) throw InvalidParams("empty function spec");
    if (spec.front() == '{') {
        nlohmann::json j = nlohmann::json::parse(spec, nullptr, false);
        if (j.is_discarded()) throw InvalidParams("function spec is not valid JSON");
        return AnalyticMap::from_json(j);
    }
    if (spec.front() == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw IoError("cannot open function file \"" + spec.substr(1) + "\"");
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded()) throw InvalidParams("function file is not valid JSON");
        return AnalyticMap::from_json(j);
    }

    const auto colon = spec.find(':');
    FamilySpec fam;
    fam.name = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (fam.name == "poly") {
        for (const std::string &tok : split_top_level(body, ','))
            fam.coeffs.push_back(parse_complex_impl(tok));
        return make_named(fam);
    }
    if (!body.empty()) {
        const KeyValues kv = parse_kv(body);
        if (kv.has("a")) fam.a = parse_complex_impl(kv.get("a"));
        if (kv.has("beta")) fam.beta = std::stod(kv.get("beta"));
        if (kv.has("alpha")) fam.alpha = parse_complex_impl(kv.get("alpha"));
        if (kv.has("c")) fam.c = std::stod(kv.get("c"));
        double rho = kv.has("rho") ? std::stod(kv.get("rho")) : 1.0;
        Cx phase = kv.has("phase") ? parse_complex_impl(kv.get("phase")) : Cx(1.0, 0.0);
        std::vector<Cx> zeros;
        if (kv.has("zeros"))
            for (const std::string &tok : split_top_level(kv.get("zeros"), ';'))
                zeros.push_back(parse_complex_impl(tok));
        if (fam.name == "qc_composed") fam.omega = make_schwarz(rho, phase, std::move(zeros));
    }
    return make_named(fam);
}

ClassSpec parse_class_spec(const std::string &name, double c, double A, double B) {
    if (name == "sl") return ClassSpec::sl();
    if (name == "sstar_qc") return ClassSpec::sstar_qc(c);
    if (name == "janowski") return ClassSpec::janowski(A, B);
    if (name == "cor24") return ClassSpec::cor24(c);
    if (name == "cor27") return ClassSpec::cor27(c);
    throw InvalidParams("unknown class \"" + name +
                        "\" (expected sl, sstar_qc, janowski, cor24 or cor27)");
}

namespace {

DiskGrid build_grid(const std::string &radii_csv, int angles) {
    DiskGrid grid = DiskGrid::standard();
    if (!radii_csv.empty()) {
        grid.radii.clear();
        for (const std::string &tok : split_top_level(radii_csv, ','))
            grid.radii.push_back(std::stod(tok));
    }
    if (angles > 0) grid.angles = angles;
    grid.validate();
    return grid;
}

void write_output(const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path);
    if (!file) throw IoError("cannot open \"" + path + "\" for writing");
    file << content;
    if (!file.good()) throw IoError("write to \"" + path + "\" failed");
}

int cmd_threshold(double A, double B, double c, std::ostream &out) {
    const double g = gamma_threshold(A, B, c);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", g);
    out << "threshold = " << buf << "\n";
    if (A == 0.0 && B == 0.0) {
        out << "note: degenerate: A=B=0\n";
    } else if (A == 1.0 && B == 0.0 && c == 1.0) {
        out << "note: c23 form (gamma >= 4)\n";
    } else if (c == 1.0) {
        out << "note: c22 form (gamma >= 4(|A|+|B|)/(1-|B|))\n";
    } else if (A == 1.0 && B == 0.0) {
        out << "note: c28 form (gamma >= 2(1+1/c))\n";
    }
    return 0;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"lemniscate-starlike subordination toolkit"};
    app.require_subcommand(1);

    // threshold
    double th_A = 1.0, th_B = 0.0, th_c = 1.0;
    CLI::App *threshold = app.add_subcommand("threshold", "print the gamma threshold");
    threshold->add_option("--A", th_A, "Janowski A");
    threshold->add_option("--B", th_B, "Janowski B");
    threshold->add_option("--c", th_c, "lemniscate parameter");

    // check
    std::string ck_f, ck_class = "sl", ck_out, ck_radii;
    double ck_c = 1.0, ck_A = 1.0, ck_B = 0.0;
    int ck_angles = 0;
    CLI::App *check = app.add_subcommand("check", "class membership of a function");
    check->add_option("--f", ck_f, "function spec")->required();
    check->add_option("--class", ck_class, "sl | sstar_qc | janowski | cor24 | cor27");
    check->add_option("--c", ck_c, "class parameter c");
    check->add_option("--A", ck_A, "Janowski A");
    check->add_option("--B", ck_B, "Janowski B");
    check->add_option("--grid-radii", ck_radii, "comma-separated grid radii");
    check->add_option("--angles", ck_angles, "angles per radius");
    check->add_option("--out", ck_out, "write verdict JSON here instead of stdout");

    // verify
    std::string vf_kind, vf_out, vf_radii;
    double vf_A = 1.0, vf_B = 0.0, vf_c = 1.0, vf_gamma = -1.0, vf_k = 1.0;
    int vf_trials = 200, vf_angles = 0;
    std::uint64_t vf_seed = 0;
    bool vf_explore = false;
    CLI::App *verify = app.add_subcommand("verify", "randomized theorem harness");
    verify->add_option("--kind", vf_kind, "t21..t23, c21..c29")->required();
    verify->add_option("--A", vf_A, "Janowski A");
    verify->add_option("--B", vf_B, "Janowski B");
    verify->add_option("--c", vf_c, "lemniscate parameter");
    verify->add_option("--gamma", vf_gamma, "gamma (default: the threshold)");
    verify->add_option("--k", vf_k, "k parameter (t23/c29)");
    verify->add_option("--trials", vf_trials, "number of trials");
    verify->add_option("--seed", vf_seed, "RNG seed (required)")->required();
    verify->add_flag("--explore", vf_explore, "report-only mode; no gamma gate, exit 0");
    verify->add_option("--grid-radii", vf_radii, "comma-separated grid radii");
    verify->add_option("--angles", vf_angles, "angles per radius");
    verify->add_option("--out", vf_out, "write report JSON here as well");

    // plot-boundary
    std::string pb_region = "lemniscate", pb_format = "csv", pb_out;
    double pb_c = 0.5, pb_A = 1.0, pb_B = 0.0;
    int pb_n = 1024;
    CLI::App *plot = app.add_subcommand("plot-boundary", "boundary curve CSV/SVG");
    plot->add_option("--region", pb_region, "lemniscate | janowski");
    plot->add_option("--c", pb_c, "lemniscate parameter");
    plot->add_option("--A", pb_A, "Janowski A");
    plot->add_option("--B", pb_B, "Janowski B");
    plot->add_option("--n", pb_n, "boundary samples (>= 16)");
    plot->add_option("--format", pb_format, "csv | svg");
    plot->add_option("--out", pb_out, "output path (default stdout)");

    // margin-sweep
    std::string ms_kind = "t21", ms_mults = "0.25,0.5,1,2", ms_out, ms_radii;
    double ms_A = 1.0, ms_B = 0.0, ms_c = 1.0, ms_k = 1.0;
    int ms_trials = 50, ms_angles = 0;
    std::uint64_t ms_seed = 0;
    CLI::App *sweep = app.add_subcommand("margin-sweep", "min margin vs gamma multiplier");
    sweep->add_option("--kind", ms_kind, "a gamma-kind (t21, c21, ...)");
    sweep->add_option("--A", ms_A, "Janowski A");
    sweep->add_option("--B", ms_B, "Janowski B");
    sweep->add_option("--c", ms_c, "lemniscate parameter");
    sweep->add_option("--k", ms_k, "k parameter");
    sweep->add_option("--multipliers", ms_mults, "comma-separated threshold multipliers");
    sweep->add_option("--trials", ms_trials, "trials per row");
    sweep->add_option("--seed", ms_seed, "RNG seed (required)")->required();
    sweep->add_option("--grid-radii", ms_radii, "comma-separated grid radii");
    sweep->add_option("--angles", ms_angles, "angles per radius");
    sweep->add_option("--out", ms_out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (threshold->parsed()) return cmd_threshold(th_A, th_B, th_c, out);

        if (check->parsed()) {
            const AnalyticMap f = parse_function_spec(ck_f);
            const ClassSpec cls = parse_class_spec(ck_class, ck_c, ck_A, ck_B);
            const DiskGrid grid = build_grid(ck_radii, ck_angles);
            const Verdict v = class_membership(f, cls, grid);
            const std::string text = verdict_to_json(v).dump(2) + "\n";
            out << text;
            if (!ck_out.empty()) write_output(ck_out, text, out);
            return v.holds ? 0 : 1;
        }

        if (verify->parsed()) {
            const auto kind = parse_kind(vf_kind);
            if (!kind) throw InvalidParams("unknown kind \"" + vf_kind + "\"");
            if (*kind == CriterionKind::c25 || *kind == CriterionKind::c26)
                throw InvalidParams(vf_kind + " concludes univalence via external results; "
                                              "its conclusion is not tested");
            CriterionParams params;
            params.A = vf_A;
            params.B = vf_B;
            params.c = vf_c;
            params.k = vf_k;
            params.gamma = vf_gamma > 0.0
                               ? vf_gamma
                               : (kind_has_gamma(*kind)
                                      ? gamma_threshold(vf_A, vf_B, vf_c)
                                      : 1.0);
            params = canonical_params(*kind, params);
            if (!vf_explore && !is_paper_valid(*kind, params))
                throw InvalidParams("gamma below the threshold " +
                                    std::to_string(gamma_threshold(params.A, params.B, params.c)) +
                                    "; pass --explore for below-threshold runs");
            const DiskGrid grid = build_grid(vf_radii, vf_angles);
            const TrialReport report =
                *kind == CriterionKind::t21
                    ? run_forward_t21(params.A, params.B, params.c, params.gamma, vf_trials,
                                      vf_seed, grid)
                    : run_conditional(*kind, params, vf_trials, vf_seed, grid);
            const std::string text = trial_report_to_json(report).dump(2) + "\n";
            out << text;
            if (!vf_out.empty()) write_output(vf_out, text, out);
            if (vf_explore) return 0;
            return report.violations.empty() ? 0 : 1;
        }

        if (plot->parsed()) {
            TargetRegion region = pb_region == "janowski"
                                      ? TargetRegion(JanowskiDisk(pb_A, pb_B))
                                      : TargetRegion(Lemniscate(pb_c));
            if (pb_region != "janowski" && pb_region != "lemniscate")
                throw InvalidParams("unknown region \"" + pb_region + "\"");
            const std::vector<Cx> pts = boundary_samples(region, pb_n);
            std::ostringstream body;
            if (pb_format == "csv")
                write_boundary_csv(body, pts);
            else if (pb_format == "svg")
                write_boundary_svg(body, pts);
            else
                throw InvalidParams("unknown format \"" + pb_format + "\"");
            write_output(pb_out, body.str(), out);
            return 0;
        }

        if (sweep->parsed()) {
            const auto kind = parse_kind(ms_kind);
            if (!kind) throw InvalidParams("unknown kind \"" + ms_kind + "\"");
            CriterionParams params;
            params.A = ms_A;
            params.B = ms_B;
            params.c = ms_c;
            params.k = ms_k;
            std::vector<double> mults;
            for (const std::string &tok : split_top_level(ms_mults, ','))
                mults.push_back(std::stod(tok));
            const DiskGrid grid = build_grid(ms_radii, ms_angles);
            const MarginTable table = margin_sweep(*kind, params, mults, ms_trials, ms_seed, grid);
            std::ostringstream body;
            write_margin_csv(body, table);
            write_output(ms_out, body.str(), out);
            return 0;
        }
    } catch (const InvalidParams &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const EvaluationError &e) {
        err << "error: " << e.what();
        if (e.has_where) {
            char buf[80];
            std::snprintf(buf, sizeof(buf), " at z=(%.17g,%.17g)", e.where.real(),
                          e.where.imag());
            err << buf;
        }
        err << "\n";
        return 3;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace lemni::cli
