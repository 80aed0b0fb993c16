#pragma once

#include <functional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "lemni/regions.hpp"

namespace lemni {

// Radial x angular sampling of the disk; deterministic ordering is
// radius-major, angle-minor (index = radius_idx * angles + angle_idx).
struct DiskGrid {
    std::vector<double> radii; // increasing, in (0, 0.99]
    int angles = 512;          // per radius, >= 64

    // radii {0.1, ..., 0.9, 0.95, 0.99}, 512 angles.  Failures in this
    // problem family concentrate near the boundary; 0.99 caps branch-point
    // blowups.
    static DiskGrid standard();

    std::size_t size() const { return radii.size() * std::size_t(angles); }
    Cx point(std::size_t index) const;
    void validate() const;
};

// Outcome of a containment / membership sweep.  A positive min_margin is
// evidence at resolution only; a negative one is a proof of failure with a
// witness.
struct Verdict {
    bool holds = false;  // "holds at resolution"
    double min_margin = 0.0;
    Cx witness{0.0, 0.0};
    long samples = 0;
    std::string note; // "base_point_mismatch", "ZeroOfF", ... empty otherwise
};

nlohmann::json verdict_to_json(const Verdict &v);

using PointFn = std::function<Cx(Cx)>;

enum class ErrorPolicy {
    propagate,        // rethrow EvaluationError with the offending grid point
    treat_as_failure, // sentinel margin + witness at the offending point
};

// Minimum of contains_with_margin over the grid; ties resolved toward the
// smallest grid index.  Thread count follows LEMNI_THREADS; the reduction is
// schedule-independent.
Verdict check_containment(const AnalyticMap &f, const TargetRegion &region, const DiskGrid &grid);
Verdict check_containment_fn(const PointFn &f, const TargetRegion &region, const DiskGrid &grid,
                             ErrorPolicy policy = ErrorPolicy::propagate);

// As check_containment, but fails immediately (note "base_point_mismatch")
// when |f(0) - base| > 1e-10 for regions that carry a base point.
Verdict check_subordination(const AnalyticMap &f, const TargetRegion &region, const DiskGrid &grid);
Verdict check_subordination_fn(const PointFn &f, Cx f_at_zero, const TargetRegion &region,
                               const DiskGrid &grid, ErrorPolicy policy = ErrorPolicy::propagate);

// Serial sweep that stops at the first non-positive margin, scanning radii
// outside-in.  holds agrees exactly with check_containment_fn; min_margin and
// witness are only meaningful when the sweep ran to completion.
Verdict quick_containment_fn(const PointFn &f, const TargetRegion &region, const DiskGrid &grid);

// Membership classes checked through the associated quotient of f.
struct ClassSpec {
    enum class Kind { sstar_qc, sl, janowski, cor24, cor27 };
    Kind kind = Kind::sl;
    double c = 1.0;
    double A = 1.0, B = 0.0; // janowski only

    static ClassSpec sstar_qc(double c);
    static ClassSpec sl();
    static ClassSpec janowski(double A, double B);
    static ClassSpec cor24(double c);
    static ClassSpec cor27(double c);

    std::string name() const;
};

// Quotients: z f'/f for sstar_qc / sl / janowski (value 1 at z = 0 by the
// removable singularity), (z/f)^2 f' for cor24, (f/z)^2 for cor27.  Margins
// for the cor-classes are c - |quotient - 1|.  f must be normalized
// (f(0) = 0, f'(0) = 1, both to 1e-10); a zero of f inside the grid is an
// automatic failure with witness (note "ZeroOfF").
Verdict class_membership(const AnalyticMap &f, const ClassSpec &cls, const DiskGrid &grid);

// z f'(z)/f(z) as an expression tree (no special value at 0; the membership
// path substitutes 1 there).
AnalyticMap starlike_quotient(const AnalyticMap &f);

// Standalone re-evaluation of the class-membership margin at one point,
// rebuilding the quotient from fresh trees.  Used to certify witnesses.
double class_margin_at(const AnalyticMap &f, const ClassSpec &cls, Cx z);

} // namespace lemni
