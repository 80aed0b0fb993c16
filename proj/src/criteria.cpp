#include "lemni/criteria.hpp"

#include <cmath>
#include <limits>

namespace lemni {

namespace {

constexpr const char *kKindNames[] = {"t21", "c21", "c22", "c23", "c24", "c25",
                                      "c26", "c27", "c28", "c29", "t22", "t23"};

Cx guarded_div(Cx num, Cx den, Cx z, const char *what) {
    if (std::abs(den) < 1e-300)
        throw EvaluationError(std::string("DivisionByZero: ") + what, z);
    return cx_div(num, den);
}

} // namespace

const char *kind_name(CriterionKind kind) { return kKindNames[int(kind)]; }

std::optional<CriterionKind> parse_kind(std::string_view name) {
    for (int i = 0; i < 12; ++i)
        if (name == kKindNames[i]) return CriterionKind(i);
    return std::nullopt;
}

SubjectType subject_type(CriterionKind kind) {
    switch (kind) {
    case CriterionKind::t21:
    case CriterionKind::t22:
    case CriterionKind::t23:
        return SubjectType::p_subject;
    default:
        return SubjectType::f_subject;
    }
}

bool kind_has_gamma(CriterionKind kind) {
    return kind != CriterionKind::t22 && kind != CriterionKind::t23 &&
           kind != CriterionKind::c29;
}

bool kind_has_k(CriterionKind kind) {
    return kind == CriterionKind::t23 || kind == CriterionKind::c29;
}

CriterionParams canonical_params(CriterionKind kind, CriterionParams p) {
    switch (kind) {
    case CriterionKind::c22:
    case CriterionKind::c25:
    case CriterionKind::c26:
        p.c = 1.0;
        break;
    case CriterionKind::c23:
        p.A = 1.0;
        p.B = 0.0;
        p.c = 1.0;
        break;
    case CriterionKind::c28:
        p.A = 1.0;
        p.B = 0.0;
        break;
    default:
        break;
    }
    if (!(p.c > 0.0) || p.c > 1.0) throw InvalidParams("c must lie in (0, 1]");
    if (kind_has_gamma(kind)) {
        if (!(p.gamma > 0.0)) throw InvalidParams("gamma must be positive");
        if (std::abs(p.A) > 1.0) throw InvalidParams("|A| <= 1 required");
        if (std::abs(p.B) >= 1.0) throw InvalidParams("|B| < 1 required");
        if (p.A == p.B) throw InvalidParams("A != B required");
    }
    if (kind_has_k(kind) && !(p.k >= 1.0)) throw InvalidParams("k >= 1 required");
    return p;
}

double gamma_threshold(double A, double B, double c) {
    if (std::abs(A) > 1.0) throw InvalidParams("InvalidParams: |A| <= 1 required");
    if (std::abs(B) >= 1.0) throw InvalidParams("InvalidParams: |B| < 1 required");
    if (!(c > 0.0) || c > 1.0) throw InvalidParams("InvalidParams: c in (0, 1] required");
    return 2.0 * (std::abs(A) + std::abs(B)) * (1.0 + c) / (c * (1.0 - std::abs(B)));
}

bool is_paper_valid(CriterionKind kind, const CriterionParams &params) {
    CriterionParams p = canonical_params(kind, params);
    if (kind_has_gamma(kind)) return p.gamma >= gamma_threshold(p.A, p.B, p.c);
    if (kind_has_k(kind)) return p.k >= 1.0;
    return true; // t22 carries only c
}

double H_func(double t, double A, double B, double c, double gamma, double k) {
    if (A == 0.0 && B == 0.0) throw InvalidParams("DegenerateParams: A = B = 0");
    const double m = 2.0 * c + c * gamma * k;
    const double r1 = std::max(0.0, 1.0 + 2.0 * c * t + c * c);
    const double r2 = std::max(0.0, 4.0 + 4.0 * m * t + m * m);
    const double den = 2.0 * std::abs(A) * std::sqrt(r1) + std::abs(B) * std::sqrt(r2);
    if (den < 1e-300) return std::numeric_limits<double>::infinity();
    return c * k * gamma / den;
}

double L_func(double k, double A, double B, double c, double gamma) {
    if (A == 0.0 && B == 0.0) throw InvalidParams("DegenerateParams: A = B = 0");
    const double den =
        2.0 * std::abs(A) * (1.0 + c) + std::abs(B) * (2.0 + 2.0 * c + c * gamma * k);
    if (den < 1e-300) return std::numeric_limits<double>::infinity();
    return c * k * gamma / den;
}

Cx theorem22_target(double c, Cx z) {
    if (!(c > 0.0) || c > 1.0) throw InvalidParams("theorem22_target needs c in (0, 1]");
    const Cx w = Cx(1.0, 0.0) + c * z;
    if (std::abs(w) < 1e-12)
        throw EvaluationError("PoleAtBranchPoint: 1 + cz = 0", z);
    const Cx q = std::sqrt(w);
    return q * q * q / 3.0 + c * z / (2.0 * q);
}

AnalyticMap theorem22_target_map(double c) {
    if (!(c > 0.0) || c > 1.0) throw InvalidParams("theorem22_target needs c in (0, 1]");
    const AnalyticMap z = AnalyticMap::identity();
    const AnalyticMap q =
        AnalyticMap::sqrt_of(AnalyticMap::constant(1.0) + AnalyticMap::constant(c) * z);
    return q * q * q * AnalyticMap::constant(Cx(1.0 / 3.0, 0.0)) + z * q.derivative();
}

Cx t22_convexity_lhs(double c, Cx z) {
    const Cx cz = c * z;
    return Cx(2.0, 0.0) + cz - cz / (2.0 * (Cx(1.0, 0.0) + cz));
}

// ── CriterionEvaluator ───────────────────────────────────────────────────────

CriterionEvaluator::CriterionEvaluator(CriterionKind kind, AnalyticMap subject,
                                       CriterionParams params)
    : kind_(kind), params_(canonical_params(kind, params)), subject_(std::move(subject)),
      d1_(subject_.derivative()), d2_(AnalyticMap::constant(0.0)) {
    const Cx s0 = subject_.eval(Cx(0.0, 0.0));
    const Cx d0 = d1_.eval(Cx(0.0, 0.0));
    if (subject_type(kind) == SubjectType::p_subject) {
        if (std::abs(s0 - Cx(1.0, 0.0)) > 1e-10)
            throw InvalidParams(std::string("SubjectMismatch: kind ") + kind_name(kind) +
                                " needs p(0) = 1");
    } else {
        if (std::abs(s0) > 1e-10 || std::abs(d0 - Cx(1.0, 0.0)) > 1e-10)
            throw InvalidParams(std::string("SubjectMismatch: kind ") + kind_name(kind) +
                                " needs a normalized subject (f(0) = 0, f'(0) = 1)");
    }
    switch (kind) {
    case CriterionKind::c21:
    case CriterionKind::c22:
    case CriterionKind::c23:
    case CriterionKind::c24:
    case CriterionKind::c25:
    case CriterionKind::c26:
    case CriterionKind::c29:
        needs_d2_ = true;
        d2_ = d1_.derivative();
        break;
    default:
        break;
    }
}

Cx CriterionEvaluator::lhs_at_zero() const {
    return kind_ == CriterionKind::t22 ? Cx(1.0 / 3.0, 0.0) : Cx(1.0, 0.0);
}

Cx CriterionEvaluator::lhs(Cx z) const {
    if (z == Cx(0.0, 0.0)) return lhs_at_zero();
    const double g = params_.gamma;

    if (subject_type(kind_) == SubjectType::p_subject) {
        const Cx p = subject_.eval(z);
        const Cx dp = d1_.eval(z);
        switch (kind_) {
        case CriterionKind::t21:
            return Cx(1.0, 0.0) + g * guarded_div(z * dp, p, z, "p vanishes in t21 operator");
        case CriterionKind::t22:
            return p * p * p / 3.0 + z * dp;
        case CriterionKind::t23:
            return p * (p + z * dp);
        default:
            break;
        }
        throw Error("unreachable p-kind");
    }

    const Cx fv = subject_.eval(z);
    const Cx d1v = d1_.eval(z);
    const Cx u = guarded_div(z * d1v, fv, z, "f vanishes in zf'/f");
    Cx v(0.0, 0.0);
    if (needs_d2_) v = guarded_div(z * d2_.eval(z), d1v, z, "f' vanishes in zf''/f'");

    switch (kind_) {
    case CriterionKind::c21:
    case CriterionKind::c22:
    case CriterionKind::c23:
        return Cx(1.0, 0.0) + g * (Cx(1.0, 0.0) + v - u);
    case CriterionKind::c24:
    case CriterionKind::c25:
        return Cx(1.0, 0.0) + g * (Cx(1.0, 0.0) + 0.5 * v - u);
    case CriterionKind::c26:
        return Cx(1.0, 0.0) + g * 0.5 * v;
    case CriterionKind::c27:
    case CriterionKind::c28:
        return Cx(1.0, 0.0) + g * (u - Cx(1.0, 0.0));
    case CriterionKind::c29:
        return u * u * (Cx(2.0, 0.0) + v - u);
    default:
        break;
    }
    throw Error("unreachable f-kind");
}

Cx criterion_lhs(CriterionKind kind, const AnalyticMap &subject, const CriterionParams &params,
                 Cx z) {
    return CriterionEvaluator(kind, subject, params).lhs(z);
}

TargetRegion hypothesis_region(CriterionKind kind, const CriterionParams &params, int polygon_n) {
    const CriterionParams p = canonical_params(kind, params);
    switch (kind) {
    case CriterionKind::c23:
    case CriterionKind::c28:
        return HalfPlaneShifted(0.0);
    case CriterionKind::t23:
    case CriterionKind::c29:
        return HalfPlaneShifted(1.0 + p.c * (1.0 + p.k / 2.0));
    case CriterionKind::t22:
        return region_from_univalent_boundary(theorem22_target_map(p.c), 0.99, polygon_n);
    default:
        return JanowskiDisk(p.A, p.B);
    }
}

ConclusionSpec conclusion_class(CriterionKind kind, const CriterionParams &params) {
    const CriterionParams p = canonical_params(kind, params);
    ConclusionSpec out;
    out.c = p.c;
    switch (kind) {
    case CriterionKind::t21:
    case CriterionKind::t22:
    case CriterionKind::t23:
        out.target = ConclusionSpec::Target::subject_in_lemniscate;
        break;
    case CriterionKind::c21:
    case CriterionKind::c23:
    case CriterionKind::c29:
        out.target = ConclusionSpec::Target::membership_class;
        out.cls = ClassSpec::sstar_qc(p.c);
        break;
    case CriterionKind::c22:
        out.target = ConclusionSpec::Target::membership_class;
        out.cls = ClassSpec::sl();
        break;
    case CriterionKind::c24:
        out.target = ConclusionSpec::Target::membership_class;
        out.cls = ClassSpec::cor24(p.c);
        break;
    case CriterionKind::c27:
    case CriterionKind::c28:
        out.target = ConclusionSpec::Target::membership_class;
        out.cls = ClassSpec::cor27(p.c);
        break;
    case CriterionKind::c25:
    case CriterionKind::c26:
        out.target = ConclusionSpec::Target::untested;
        break;
    }
    return out;
}

ImplicationOutcome check_implication(CriterionKind kind, const AnalyticMap &subject,
                                     const CriterionParams &params, const DiskGrid &grid,
                                     int polygon_n) {
    const CriterionEvaluator ev(kind, subject, params);
    const TargetRegion region = hypothesis_region(kind, params, polygon_n);

    ImplicationOutcome out;
    PointFn lhs_fn = [ev](Cx z) { return ev.lhs(z); };
    out.hypothesis = check_subordination_fn(lhs_fn, ev.lhs_at_zero(), region, grid,
                                            ErrorPolicy::treat_as_failure);

    const ConclusionSpec conc = conclusion_class(kind, params);
    switch (conc.target) {
    case ConclusionSpec::Target::subject_in_lemniscate:
        out.conclusion = check_subordination(subject, Lemniscate(conc.c), grid);
        break;
    case ConclusionSpec::Target::membership_class:
        out.conclusion = class_membership(subject, conc.cls, grid);
        break;
    case ConclusionSpec::Target::untested:
        out.conclusion = std::nullopt;
        break;
    }
    return out;
}

} // namespace lemni
