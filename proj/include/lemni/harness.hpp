#pragma once

#include <cstdint>
#include <ostream>

#include <nlohmann/json_fwd.hpp>

#include "lemni/criteria.hpp"

namespace lemni {

struct ViolationCert {
    std::string subject; // reproducible description of the failing subject
    Cx witness{0.0, 0.0};
    double margin = 0.0;
};

// Outcome of a seeded randomized run.  Identical inputs give byte-identical
// JSON apart from the wall-clock field.
struct TrialReport {
    CriterionKind kind = CriterionKind::t21;
    std::uint64_t seed = 0;
    int trials = 0;
    int hypothesis_true_count = 0;
    int aborted_trials = 0; // per-trial evaluation/quadrature errors
    std::vector<ViolationCert> violations;
    bool has_min_conclusion_margin = false;
    double min_conclusion_margin = 0.0; // among hypothesis-true trials
    double wall_seconds = 0.0;

    // Internal to margin sweeps; not serialized.
    int argmin_trial = -1;
    std::string argmin_subject;
};

nlohmann::json trial_report_to_json(const TrialReport &report, bool include_wall_clock = true);

// Recovers p from F = 1 + gamma z p'/p with F = (1 + A omega)/(1 + B omega):
//   p(z) = exp( (1/gamma) Int_0^z (F(t) - 1)/t dt ),  p(0) = 1 exactly.
// Straight-segment adaptive Gauss-Legendre, absolute tolerance 1e-10.
Cx solve_p_from_F(const SchwarzMap &omega, double A, double B, double gamma, Cx z);

// Forward test of the t21 subordination: every trial draws a random Schwarz
// map (rho in [0.3,1], 0-3 zeros in the 0.9-disk), builds p by inverting F
// (the hypothesis then holds by construction; verified on 10^3 check points),
// and sweeps the conclusion p < sqrt(1+cz) over the grid.
TrialReport run_forward_t21(double A, double B, double c, double gamma, int n_trials,
                            std::uint64_t seed, const DiskGrid &grid);

// Conditional test: random subjects (p = 1 + sum_{j<=4} eps_j z^j with
// |eps_j| <= 0.2, f = z + sum_{j=2..5} a_j z^j with |a_j| <= 0.1, plus named
// fixtures), counting trials whose hypothesis holds at resolution and whose
// conclusion fails -- each such event is a certified finding.
TrialReport run_conditional(CriterionKind kind, const CriterionParams &params, int n_trials,
                            std::uint64_t seed, const DiskGrid &grid);

struct MarginRow {
    double multiplier = 1.0;
    double gamma = 0.0;
    double min_margin = 0.0;
    bool has_margin = false;
    std::string argmin_id;
};

struct MarginTable {
    std::vector<MarginRow> rows; // ordered by multiplier
};

// Sweeps gamma = m * gamma_threshold(A, B, c) over the multipliers (each in
// (0, 4]); forward trials for t21, conditional otherwise.  Below-threshold
// rows are exploratory: negative margins there are findings, not failures.
MarginTable margin_sweep(CriterionKind kind, const CriterionParams &params,
                         const std::vector<double> &multipliers, int n_trials,
                         std::uint64_t seed, const DiskGrid &grid);

nlohmann::json margin_table_to_json(const MarginTable &table);
// CSV "multiplier,gamma,min_margin,argmin_id"
void write_margin_csv(std::ostream &out, const MarginTable &table);

} // namespace lemni
