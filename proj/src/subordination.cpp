#include "lemni/subordination.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "lemni/parallel.hpp"

namespace lemni {

DiskGrid DiskGrid::standard() {
    DiskGrid g;
    g.radii = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
    g.angles = 512;
    return g;
}

Cx DiskGrid::point(std::size_t index) const {
    const std::size_t ri = index / std::size_t(angles);
    const std::size_t ai = index % std::size_t(angles);
    return std::polar(radii[ri], 2.0 * M_PI * double(ai) / double(angles));
}

void DiskGrid::validate() const {
    if (radii.empty()) throw InvalidParams("DiskGrid needs at least one radius");
    double prev = 0.0;
    for (double r : radii) {
        if (!(r > prev)) throw InvalidParams("DiskGrid radii must be positive and increasing");
        if (r > 0.99) throw InvalidParams("DiskGrid radii must not exceed 0.99");
        prev = r;
    }
    if (angles < 64) throw InvalidParams("DiskGrid needs at least 64 angles per radius");
}

nlohmann::json verdict_to_json(const Verdict &v) {
    nlohmann::json j{{"holds", v.holds},
                     {"min_margin", v.min_margin},
                     {"witness", {{"re", v.witness.real()}, {"im", v.witness.imag()}}},
                     {"samples", v.samples}};
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

namespace {

using MarginFn = std::function<double(Cx)>;

Verdict sweep_margin(const PointFn &f, const MarginFn &margin, const DiskGrid &grid,
                     ErrorPolicy policy) {
    grid.validate();
    const std::size_t n = grid.size();
    std::vector<double> margins(n);
    std::vector<unsigned char> failed(n, 0);

    parallel_for(n, [&](std::size_t i) {
        const Cx z = grid.point(i);
        try {
            margins[i] = margin(f(z));
        } catch (const EvaluationError &) {
            failed[i] = 1;
            margins[i] = kMarginNegInf;
        }
    });

    if (policy == ErrorPolicy::propagate) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!failed[i]) continue;
            const Cx z = grid.point(i);
            try {
                (void)margin(f(z)); // regenerate the original error
            } catch (const EvaluationError &e) {
                if (e.has_where) throw;
                throw EvaluationError(std::string(e.what()) + " (grid point)", z);
            }
        }
    }

    Verdict v;
    v.samples = long(n);
    std::size_t argmin = 0;
    double best = std::numeric_limits<double>::infinity();
    bool any_failed = false;
    for (std::size_t i = 0; i < n; ++i) {
        any_failed = any_failed || failed[i];
        if (margins[i] < best) {
            best = margins[i];
            argmin = i;
        }
    }
    v.min_margin = best;
    v.witness = grid.point(argmin);
    v.holds = best > 0.0;
    if (any_failed && failed[argmin]) v.note = "evaluation_failure";
    return v;
}

} // namespace

Verdict check_containment_fn(const PointFn &f, const TargetRegion &region, const DiskGrid &grid,
                             ErrorPolicy policy) {
    return sweep_margin(
        f, [&](Cx w) { return contains_with_margin(region, w).margin; }, grid, policy);
}

Verdict check_containment(const AnalyticMap &f, const TargetRegion &region, const DiskGrid &grid) {
    return check_containment_fn([&](Cx z) { return f.eval(z); }, region, grid);
}

Verdict check_subordination_fn(const PointFn &f, Cx f_at_zero, const TargetRegion &region,
                               const DiskGrid &grid, ErrorPolicy policy) {
    if (auto base = region_base_point(region)) {
        const double off = std::abs(f_at_zero - *base);
        if (off > 1e-10) {
            Verdict v;
            v.holds = false;
            v.min_margin = -off;
            v.witness = Cx(0.0, 0.0);
            v.samples = 1;
            v.note = "base_point_mismatch";
            return v;
        }
    }
    return check_containment_fn(f, region, grid, policy);
}

Verdict check_subordination(const AnalyticMap &f, const TargetRegion &region, const DiskGrid &grid) {
    return check_subordination_fn([&](Cx z) { return f.eval(z); }, f.eval(Cx(0.0, 0.0)), region,
                                  grid);
}

Verdict quick_containment_fn(const PointFn &f, const TargetRegion &region, const DiskGrid &grid) {
    grid.validate();
    Verdict v;
    v.min_margin = std::numeric_limits<double>::infinity();
    const std::size_t nr = grid.radii.size();
    const std::size_t na = std::size_t(grid.angles);
    for (std::size_t r = nr; r-- > 0;) {
        for (std::size_t a = 0; a < na; ++a) {
            const std::size_t idx = r * na + a;
            const Cx z = grid.point(idx);
            double m;
            try {
                m = contains_with_margin(region, f(z)).margin;
            } catch (const EvaluationError &) {
                m = kMarginNegInf;
            }
            ++v.samples;
            if (m < v.min_margin) {
                v.min_margin = m;
                v.witness = z;
            }
            if (m <= 0.0) {
                v.holds = false;
                return v;
            }
        }
    }
    v.holds = v.min_margin > 0.0;
    return v;
}

ClassSpec ClassSpec::sstar_qc(double c) { return {Kind::sstar_qc, c, 1.0, 0.0}; }
ClassSpec ClassSpec::sl() { return {Kind::sl, 1.0, 1.0, 0.0}; }
ClassSpec ClassSpec::janowski(double A, double B) { return {Kind::janowski, 1.0, A, B}; }
ClassSpec ClassSpec::cor24(double c) { return {Kind::cor24, c, 1.0, 0.0}; }
ClassSpec ClassSpec::cor27(double c) { return {Kind::cor27, c, 1.0, 0.0}; }

std::string ClassSpec::name() const {
    char buf[96];
    switch (kind) {
    case Kind::sstar_qc:
        std::snprintf(buf, sizeof(buf), "sstar_qc(c=%.17g)", c);
        return buf;
    case Kind::sl:
        return "sl";
    case Kind::janowski:
        std::snprintf(buf, sizeof(buf), "janowski(A=%.17g,B=%.17g)", A, B);
        return buf;
    case Kind::cor24:
        std::snprintf(buf, sizeof(buf), "cor24(c=%.17g)", c);
        return buf;
    case Kind::cor27:
        std::snprintf(buf, sizeof(buf), "cor27(c=%.17g)", c);
        return buf;
    }
    return "?";
}

AnalyticMap starlike_quotient(const AnalyticMap &f) {
    return AnalyticMap::identity() * f.derivative() / f;
}

double class_margin_at(const AnalyticMap &f, const ClassSpec &cls, Cx z) {
    const AnalyticMap df = f.derivative();
    const AnalyticMap id = AnalyticMap::identity();
    try {
        switch (cls.kind) {
        case ClassSpec::Kind::sstar_qc:
        case ClassSpec::Kind::sl: {
            const Cx w = z == Cx(0.0, 0.0) ? Cx(1.0, 0.0) : (id * df / f).eval(z);
            const double c = cls.kind == ClassSpec::Kind::sl ? 1.0 : cls.c;
            return contains_with_margin(Lemniscate(c), w).margin;
        }
        case ClassSpec::Kind::janowski: {
            const Cx w = z == Cx(0.0, 0.0) ? Cx(1.0, 0.0) : (id * df / f).eval(z);
            return contains_with_margin(JanowskiDisk(cls.A, cls.B), w).margin;
        }
        case ClassSpec::Kind::cor24: {
            const Cx w = z == Cx(0.0, 0.0) ? Cx(1.0, 0.0) : ((id / f) * (id / f) * df).eval(z);
            return cls.c - std::abs(w - Cx(1.0, 0.0));
        }
        case ClassSpec::Kind::cor27: {
            const Cx w = z == Cx(0.0, 0.0) ? Cx(1.0, 0.0) : ((f / id) * (f / id)).eval(z);
            return cls.c - std::abs(w - Cx(1.0, 0.0));
        }
        }
    } catch (const EvaluationError &) {
        return kMarginNegInf;
    }
    throw Error("unreachable class kind");
}

Verdict class_membership(const AnalyticMap &f, const ClassSpec &cls, const DiskGrid &grid) {
    const Cx f0 = f.eval(Cx(0.0, 0.0));
    const Cx df0 = eval_deriv(f, Cx(0.0, 0.0));
    if (std::abs(f0) > 1e-10 || std::abs(df0 - Cx(1.0, 0.0)) > 1e-10)
        throw InvalidParams("NotNormalized: class membership needs f(0) = 0 and f'(0) = 1");
    if (cls.kind != ClassSpec::Kind::janowski && (!(cls.c > 0.0) || cls.c > 1.0))
        throw InvalidParams("class membership needs c in (0, 1]");

    const AnalyticMap df = f.derivative();
    const AnalyticMap z = AnalyticMap::identity();
    Verdict v;

    switch (cls.kind) {
    case ClassSpec::Kind::sstar_qc:
    case ClassSpec::Kind::sl:
    case ClassSpec::Kind::janowski: {
        const AnalyticMap quot = z * df / f;
        PointFn fn = [quot](Cx w) { return w == Cx(0.0, 0.0) ? Cx(1.0, 0.0) : quot.eval(w); };
        TargetRegion region =
            cls.kind == ClassSpec::Kind::janowski
                ? TargetRegion(JanowskiDisk(cls.A, cls.B))
                : TargetRegion(Lemniscate(cls.kind == ClassSpec::Kind::sl ? 1.0 : cls.c));
        v = check_subordination_fn(fn, Cx(1.0, 0.0), region, grid, ErrorPolicy::treat_as_failure);
        break;
    }
    case ClassSpec::Kind::cor24:
    case ClassSpec::Kind::cor27: {
        AnalyticMap quot =
            cls.kind == ClassSpec::Kind::cor24 ? (z / f) * (z / f) * df : (f / z) * (f / z);
        PointFn fn = [quot](Cx w) { return w == Cx(0.0, 0.0) ? Cx(1.0, 0.0) : quot.eval(w); };
        const double c = cls.c;
        v = sweep_margin(
            fn, [c](Cx w) { return c - std::abs(w - Cx(1.0, 0.0)); }, grid,
            ErrorPolicy::treat_as_failure);
        break;
    }
    }
    if (v.note == "evaluation_failure") v.note = "ZeroOfF";
    return v;
}

} // namespace lemni
