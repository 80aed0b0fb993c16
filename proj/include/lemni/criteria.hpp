#pragma once

#include <optional>
#include <string_view>

#include "lemni/subordination.hpp"

namespace lemni {

// Differential-subordination criteria.  Each kind fixes the subject type
// (a p-function with p(0) = 1 or a normalized f), the left-hand operator,
// the hypothesis region, and the concluded class:
//
//   t21:  1 + g z p'/p            < Janowski(A,B)   =>  p < sqrt(1+cz)
//   c21:  1 + g(1 + zf''/f' - zf'/f)  < Janowski    =>  f in S*(q_c)
//   c22:  c21 at c = 1                              =>  f in SL*
//   c23:  c21 at A=1, B=0 read as Re{.} > 0         =>  f in SL*
//   c24:  1 + g(1 + zf''/(2f') - zf'/f) < Janowski  =>  |(z/f)^2 f' - 1| < c
//   c25:  c24 at c = 1        (univalence conclusion, untested)
//   c26:  1 + g zf''/(2f') < Janowski at c = 1 (univalence, untested)
//   c27:  1 + g(zf'/f - 1)  < Janowski              =>  |(f/z)^2 - 1| < c
//   c28:  c27 at A=1, B=0 read as Re{.} > 0
//   c29:  Re{(zf'/f)^2 (2 + zf''/f' - zf'/f)} > 1 + c(1+k/2)  =>  f in S*(q_c)
//   t22:  p^3/3 + z p'  <  q_c^3/3 + z q_c'         =>  p < sqrt(1+cz)
//   t23:  Re{p(p + z p')} > 1 + c(1+k/2)            =>  p < sqrt(1+cz)
enum class CriterionKind { t21, c21, c22, c23, c24, c25, c26, c27, c28, c29, t22, t23 };

const char *kind_name(CriterionKind kind);
std::optional<CriterionKind> parse_kind(std::string_view name);

enum class SubjectType { p_subject, f_subject };
SubjectType subject_type(CriterionKind kind);

struct CriterionParams {
    double gamma = 4.0;
    double A = 1.0;
    double B = 0.0;
    double c = 1.0;
    double k = 1.0; // t23 / c29 only
};

// Pins the fields a kind fixes (c22/c25/c26: c = 1; c23: A=1, B=0, c=1;
// c28: A=1, B=0) and validates domains.  Throws InvalidParams.
CriterionParams canonical_params(CriterionKind kind, CriterionParams params);

bool kind_has_gamma(CriterionKind kind);
bool kind_has_k(CriterionKind kind);

// Smallest gamma the subordination theorems accept:
//   2(|A|+|B|)(1+c) / (c(1-|B|))
double gamma_threshold(double A, double B, double c);

// gamma >= threshold for gamma-kinds (k >= 1 for the k-kinds); smaller
// values are allowed in exploration mode only.
bool is_paper_valid(CriterionKind kind, const CriterionParams &params);

// c k g / (2|A| sqrt(1 + 2ct + c^2) + |B| sqrt(4 + 4(2c + cgk)t + (2c + cgk)^2)),
// nonincreasing on t in [-1, 1]; +infinity where the denominator vanishes.
// Throws DegenerateParams when A = B = 0.
double H_func(double t, double A, double B, double c, double gamma, double k);

// c k g / (2|A|(1+c) + |B|(2 + 2c + cgk)), nondecreasing in k; equals H(1).
double L_func(double k, double A, double B, double c, double gamma);

// h(z) = (1+cz)^{3/2}/3 + cz/(2 sqrt(1+cz)); h(0) = 1/3.  Throws
// PoleAtBranchPoint at 1 + cz = 0.
Cx theorem22_target(double c, Cx z);
// Same target as an expression tree (used to build the t22 region).
AnalyticMap theorem22_target_map(double c);
// 1 + cz + (1 + z q''/q') = 2 + cz - cz/(2(1+cz)); its real part stays
// above 1 - c on the disk, which is what makes the t22 target univalent.
Cx t22_convexity_lhs(double c, Cx z);

// Per-point evaluator with cached derivative trees; validates the subject
// (p(0) = 1, or f(0) = 0 and f'(0) = 1, to 1e-10).  Values at z = 0 are
// tabulated analytically per kind (1 everywhere except t22 -> 1/3).
class CriterionEvaluator {
  public:
    CriterionEvaluator(CriterionKind kind, AnalyticMap subject, CriterionParams params);

    Cx lhs(Cx z) const;
    Cx lhs_at_zero() const;
    const CriterionParams &params() const { return params_; }
    const AnalyticMap &subject() const { return subject_; }

  private:
    CriterionKind kind_;
    CriterionParams params_;
    AnalyticMap subject_, d1_, d2_;
    bool needs_d2_ = false;
};

// One-shot convenience around CriterionEvaluator.
Cx criterion_lhs(CriterionKind kind, const AnalyticMap &subject, const CriterionParams &params,
                 Cx z);

// The region the LHS must map into: Janowski disk, the shifted half-plane
// Re w > 1 + c(1+k/2) (t23/c29) or Re w > 0 (c23/c28), or the polygon
// realization of the t22 target image at radius 0.99.
TargetRegion hypothesis_region(CriterionKind kind, const CriterionParams &params,
                               int polygon_n = 512);

struct ConclusionSpec {
    enum class Target {
        subject_in_lemniscate, // p < sqrt(1+cz)
        membership_class,      // class_membership on f
        untested,              // external univalence results (c25/c26)
    };
    Target target = Target::untested;
    double c = 1.0;
    ClassSpec cls;
};

ConclusionSpec conclusion_class(CriterionKind kind, const CriterionParams &params);

struct ImplicationOutcome {
    Verdict hypothesis;
    std::optional<Verdict> conclusion; // nullopt for untested conclusions
};

// Evaluates both sides over the grid; makes no logical judgment.
ImplicationOutcome check_implication(CriterionKind kind, const AnalyticMap &subject,
                                     const CriterionParams &params, const DiskGrid &grid,
                                     int polygon_n = 512);

} // namespace lemni
