#include "lemni/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

#include "lemni/parallel.hpp"
#include "lemni/quadrature.hpp"
#include "lemni/rng.hpp"

namespace lemni {

namespace {

std::string fmt_g(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_cx(Cx w) { return "(" + fmt_g(w.real()) + "," + fmt_g(w.imag()) + ")"; }

SchwarzMap random_schwarz(Rng &rng) {
    const double rho = rng.uniform(0.3, 1.0);
    const Cx phase = rng.uniform_phase();
    const std::size_t n_zeros = rng.uniform_index(4);
    std::vector<Cx> zeros;
    zeros.reserve(n_zeros);
    for (std::size_t i = 0; i < n_zeros; ++i) zeros.push_back(rng.uniform_disk(0.9));
    return make_schwarz(rho, phase, std::move(zeros));
}

// Coefficient magnitudes are biased toward small values (|coef| = bound u^3)
// so a useful fraction of random subjects lands inside each hypothesis
// region; the bound itself is never exceeded.
Cx small_coeff(Rng &rng, double bound) {
    const double u = rng.uniform();
    const double mag = bound * u * u * u;
    const double theta = 2.0 * M_PI * rng.uniform();
    return std::polar(mag, theta);
}

struct Subject {
    AnalyticMap map;
    std::string desc;
};

Subject random_p_subject(Rng &rng) {
    std::vector<Cx> coeffs{Cx(1.0, 0.0)};
    for (int j = 1; j <= 4; ++j) coeffs.push_back(small_coeff(rng, 0.2));
    std::string d = "rand-p(eps=[";
    for (int j = 1; j <= 4; ++j) d += (j > 1 ? "," : "") + fmt_cx(coeffs[j]);
    d += "])";
    return {AnalyticMap::polynomial(coeffs), std::move(d)};
}

Subject random_f_subject(Rng &rng) {
    std::vector<Cx> coeffs{Cx(0.0, 0.0), Cx(1.0, 0.0)};
    for (int j = 2; j <= 5; ++j) coeffs.push_back(small_coeff(rng, 0.1));
    std::string d = "rand-f(a=[";
    for (int j = 2; j <= 5; ++j) d += (j > 2 ? "," : "") + fmt_cx(coeffs[j]);
    d += "])";
    return {AnalyticMap::polynomial(coeffs), std::move(d)};
}

std::vector<Subject> fixture_subjects(CriterionKind kind, double c) {
    std::vector<Subject> out;
    if (subject_type(kind) == SubjectType::p_subject) {
        out.push_back({AnalyticMap::polynomial({Cx(1.0, 0.0)}), "fixture-p:const-1"});
        FamilySpec qc;
        qc.name = "qc_composed";
        qc.c = c;
        qc.omega = make_schwarz(1.0, Cx(1.0, 0.0), {});
        out.push_back({make_named(qc), "fixture-p:qc(omega=z,c=" + fmt_g(c) + ")"});
        qc.omega = make_schwarz(0.5, Cx(1.0, 0.0), {});
        out.push_back({make_named(qc), "fixture-p:qc(omega=z/2,c=" + fmt_g(c) + ")"});
        out.push_back({AnalyticMap::polynomial({Cx(1.0, 0.0), Cx(0.1, 0.0)}),
                       "fixture-p:1+0.1z"});
        out.push_back({AnalyticMap::polynomial(
                           {Cx(1.0, 0.0), Cx(-0.12, 0.0), Cx(0.0, 0.0), Cx(0.05, 0.0)}),
                       "fixture-p:1-0.12z+0.05z^3"});
    } else {
        FamilySpec spec;
        spec.name = "identity";
        out.push_back({make_named(spec), "fixture-f:identity"});
        spec.name = "moebius";
        spec.a = Cx(0.45, 0.0);
        out.push_back({make_named(spec), "fixture-f:moebius(a=0.45)"});
        spec.name = "exp_scaled";
        spec.alpha = Cx(0.25, 0.0);
        out.push_back({make_named(spec), "fixture-f:exp_scaled(alpha=0.25)"});
        spec.name = "koebe_like";
        spec.beta = 0.7;
        out.push_back({make_named(spec), "fixture-f:koebe_like(beta=0.7)"});
        out.push_back({AnalyticMap::polynomial({Cx(0.0, 0.0), Cx(1.0, 0.0), Cx(0.05, 0.0),
                                                Cx(-0.03, 0.0)}),
                       "fixture-f:z+0.05z^2-0.03z^3"});
    }
    return out;
}

double lemniscate_margin(double c, Cx w) {
    return std::min(w.real(), c - std::abs(w * w - Cx(1.0, 0.0)));
}

double conclusion_margin_at(const ConclusionSpec &conc, const AnalyticMap &subject, Cx z) {
    if (conc.target == ConclusionSpec::Target::subject_in_lemniscate)
        return lemniscate_margin(conc.c, subject.eval(z));
    return class_margin_at(subject, conc.cls, z);
}

struct TrialOutcome {
    bool aborted = false;
    bool hyp_true = false;
    bool has_conclusion = false;
    double conc_margin = 0.0;
    Cx conc_witness{0.0, 0.0};
    std::string desc;
    std::string cert_note;
};

TrialReport reduce_outcomes(CriterionKind kind, std::uint64_t seed,
                            const std::vector<TrialOutcome> &outcomes) {
    TrialReport report;
    report.kind = kind;
    report.seed = seed;
    report.trials = int(outcomes.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const TrialOutcome &t = outcomes[i];
        if (t.aborted) {
            ++report.aborted_trials;
            continue;
        }
        if (!t.hyp_true) continue;
        ++report.hypothesis_true_count;
        if (!t.has_conclusion) continue;
        if (t.conc_margin < best) {
            best = t.conc_margin;
            report.has_min_conclusion_margin = true;
            report.min_conclusion_margin = best;
            report.argmin_trial = int(i);
            report.argmin_subject = t.desc;
        }
        if (t.conc_margin < 0.0) {
            ViolationCert cert;
            cert.subject = "trial-" + std::to_string(i) + ":" + t.desc + t.cert_note;
            cert.witness = t.conc_witness;
            cert.margin = t.conc_margin;
            report.violations.push_back(std::move(cert));
        }
    }
    return report;
}

} // namespace

nlohmann::json trial_report_to_json(const TrialReport &report, bool include_wall_clock) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto &v : report.violations)
        certs.push_back({{"subject", v.subject},
                         {"witness", {{"re", v.witness.real()}, {"im", v.witness.imag()}}},
                         {"margin", v.margin}});
    nlohmann::json j{{"kind", kind_name(report.kind)},
                     {"seed", report.seed},
                     {"trials", report.trials},
                     {"hypothesis_true_count", report.hypothesis_true_count},
                     {"aborted_trials", report.aborted_trials},
                     {"violations", std::move(certs)}};
    if (report.has_min_conclusion_margin)
        j["min_conclusion_margin"] = report.min_conclusion_margin;
    else
        j["min_conclusion_margin"] = nullptr;
    if (include_wall_clock) j["wall_clock_seconds"] = report.wall_seconds;
    return j;
}

Cx solve_p_from_F(const SchwarzMap &omega, double A, double B, double gamma, Cx z) {
    if (!(gamma > 0.0)) throw InvalidParams("solve_p_from_F needs gamma > 0");
    if (z == Cx(0.0, 0.0)) return Cx(1.0, 0.0);
    auto integrand = [&](Cx t) {
        const Cx wdz = omega.eval_div_z(t);
        const Cx den = Cx(1.0, 0.0) + B * (t * wdz);
        if (std::abs(den) < 1e-300)
            throw EvaluationError("DivisionByZero: 1 + B omega vanishes", t);
        return (A - B) * wdz / den;
    };
    const Cx integral = integrate_segment(integrand, z, 1e-10, 20);
    return std::exp(integral / gamma);
}

TrialReport run_forward_t21(double A, double B, double c, double gamma, int n_trials,
                            std::uint64_t seed, const DiskGrid &grid) {
    CriterionParams params;
    params.A = A;
    params.B = B;
    params.c = c;
    params.gamma = gamma;
    params = canonical_params(CriterionKind::t21, params);
    grid.validate();
    if (n_trials <= 0) throw InvalidParams("n_trials must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const JanowskiDisk hyp_disk(A, B);
    static constexpr double kCheckRadii[] = {0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.97, 0.99};

    std::vector<TrialOutcome> outcomes(n_trials);
    parallel_for(std::size_t(n_trials), [&](std::size_t i) {
        TrialOutcome &out = outcomes[i];
        Rng rng = Rng::substream(seed, i);
        try {
            const SchwarzMap omega = random_schwarz(rng);
            out.desc = omega.describe();

            // Hypothesis really holds: F = (1+A omega)/(1+B omega) must sit
            // inside the Janowski disk at 10^3 check points.
            double fmin = std::numeric_limits<double>::infinity();
            for (double r : kCheckRadii) {
                for (int a = 0; a < 125; ++a) {
                    const Cx z = std::polar(r, 2.0 * M_PI * a / 125.0);
                    const Cx w = omega.eval(z);
                    const Cx den = Cx(1.0, 0.0) + B * w;
                    if (std::abs(den) < 1e-300)
                        throw EvaluationError("DivisionByZero: 1 + B omega vanishes", z);
                    const Cx F = (Cx(1.0, 0.0) + A * w) / den;
                    fmin = std::min(fmin, contains_with_margin(hyp_disk, F).margin);
                }
            }
            out.hyp_true = fmin > 0.0;
            if (!out.hyp_true) return;

            // Conclusion sweep: p < sqrt(1 + cz) over the full grid.
            double best = std::numeric_limits<double>::infinity();
            std::size_t argmin = 0;
            const std::size_t n = grid.size();
            for (std::size_t idx = 0; idx < n; ++idx) {
                const Cx z = grid.point(idx);
                const double m = lemniscate_margin(c, solve_p_from_F(omega, A, B, gamma, z));
                if (m < best) {
                    best = m;
                    argmin = idx;
                }
            }
            out.has_conclusion = true;
            out.conc_margin = best;
            out.conc_witness = grid.point(argmin);

            if (best < 0.0) {
                // Certificates must re-verify standalone.
                const double again =
                    lemniscate_margin(c, solve_p_from_F(omega, A, B, gamma, out.conc_witness));
                if (std::abs(again - best) > 1e-10 || (again < 0.0) != (best < 0.0))
                    out.cert_note = " [reverify-drift " + fmt_g(again) + "]";
            }
        } catch (const EvaluationError &) {
            out.aborted = true;
        }
    });

    TrialReport report = reduce_outcomes(CriterionKind::t21, seed, outcomes);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

TrialReport run_conditional(CriterionKind kind, const CriterionParams &params_in, int n_trials,
                            std::uint64_t seed, const DiskGrid &grid) {
    if (kind == CriterionKind::t21)
        throw InvalidParams("t21 is tested forward; use run_forward_t21");
    if (kind == CriterionKind::c25 || kind == CriterionKind::c26)
        throw InvalidParams(std::string(kind_name(kind)) +
                            " concludes univalence (external result); no conditional test");
    const CriterionParams params = canonical_params(kind, params_in);
    grid.validate();
    if (n_trials <= 0) throw InvalidParams("n_trials must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const TargetRegion region = hypothesis_region(kind, params, 512);
    const std::optional<Cx> base = region_base_point(region);
    const ConclusionSpec conc = conclusion_class(kind, params);
    const std::vector<Subject> fixtures = fixture_subjects(kind, params.c);
    const bool p_kind = subject_type(kind) == SubjectType::p_subject;

    std::vector<TrialOutcome> outcomes(n_trials);
    parallel_for(std::size_t(n_trials), [&](std::size_t i) {
        TrialOutcome &out = outcomes[i];
        Rng rng = Rng::substream(seed, i);
        try {
            Subject subject = i < fixtures.size()
                                  ? fixtures[i]
                                  : (p_kind ? random_p_subject(rng) : random_f_subject(rng));
            out.desc = subject.desc;
            const CriterionEvaluator ev(kind, subject.map, params);

            if (base && std::abs(ev.lhs_at_zero() - *base) > 1e-10) {
                out.hyp_true = false;
                return;
            }
            const Verdict hyp = quick_containment_fn([&ev](Cx z) { return ev.lhs(z); }, region,
                                                     grid);
            out.hyp_true = hyp.holds;
            if (!out.hyp_true) return;

            Verdict cv;
            if (conc.target == ConclusionSpec::Target::subject_in_lemniscate)
                cv = check_subordination(subject.map, Lemniscate(conc.c), grid);
            else
                cv = class_membership(subject.map, conc.cls, grid);
            out.has_conclusion = true;
            out.conc_margin = cv.min_margin;
            out.conc_witness = cv.witness;

            if (cv.min_margin < 0.0 && cv.note.empty()) {
                const double again = conclusion_margin_at(conc, subject.map, cv.witness);
                if (std::abs(again - cv.min_margin) > 1e-10 ||
                    (again < 0.0) != (cv.min_margin < 0.0))
                    out.cert_note = " [reverify-drift " + fmt_g(again) + "]";
            } else if (!cv.note.empty()) {
                out.cert_note = " [" + cv.note + "]";
            }
        } catch (const EvaluationError &) {
            out.aborted = true;
        }
    });

    TrialReport report = reduce_outcomes(kind, seed, outcomes);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

MarginTable margin_sweep(CriterionKind kind, const CriterionParams &params_in,
                         const std::vector<double> &multipliers, int n_trials,
                         std::uint64_t seed, const DiskGrid &grid) {
    if (!kind_has_gamma(kind))
        throw InvalidParams(std::string(kind_name(kind)) + " has no gamma to sweep");
    if (multipliers.empty()) throw InvalidParams("margin sweep needs at least one multiplier");
    for (double m : multipliers)
        if (!(m > 0.0) || m > 4.0)
            throw InvalidParams("sweep multipliers must lie in (0, 4]");

    const CriterionParams base = canonical_params(kind, params_in);
    const double threshold = gamma_threshold(base.A, base.B, base.c);
    std::vector<double> ms = multipliers;
    std::sort(ms.begin(), ms.end());

    MarginTable table;
    for (double m : ms) {
        CriterionParams p = base;
        p.gamma = m * threshold;
        TrialReport report =
            kind == CriterionKind::t21
                ? run_forward_t21(p.A, p.B, p.c, p.gamma, n_trials, seed, grid)
                : run_conditional(kind, p, n_trials, seed, grid);
        MarginRow row;
        row.multiplier = m;
        row.gamma = p.gamma;
        row.has_margin = report.has_min_conclusion_margin;
        row.min_margin = report.min_conclusion_margin;
        row.argmin_id = report.argmin_trial >= 0
                            ? "trial-" + std::to_string(report.argmin_trial)
                            : "none";
        table.rows.push_back(std::move(row));
    }
    return table;
}

nlohmann::json margin_table_to_json(const MarginTable &table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : table.rows) {
        nlohmann::json row{{"multiplier", r.multiplier},
                           {"gamma", r.gamma},
                           {"argmin_id", r.argmin_id}};
        if (r.has_margin)
            row["min_margin"] = r.min_margin;
        else
            row["min_margin"] = nullptr;
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", std::move(rows)}};
}

void write_margin_csv(std::ostream &out, const MarginTable &table) {
    out << "multiplier,gamma,min_margin,argmin_id\n";
    char buf[160];
    for (const auto &r : table.rows) {
        if (r.has_margin)
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%s\n", r.multiplier, r.gamma,
                          r.min_margin, r.argmin_id.c_str());
        else
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,nan,%s\n", r.multiplier, r.gamma,
                          r.argmin_id.c_str());
        out << buf;
    }
}

} // namespace lemni
