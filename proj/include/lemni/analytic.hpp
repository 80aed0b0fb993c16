#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lemni/errors.hpp"

namespace lemni {

using Cx = std::complex<double>;

// Complex division with power-of-two prescaling.  Unlike the library
// operator/, w/w comes out exactly (1, +-0), which keeps quotient-based
// margins exact for identity-like functions.  The caller guards den != 0.
inline Cx cx_div(Cx num, Cx den) {
    const double m = std::max(std::abs(den.real()), std::abs(den.imag()));
    const double s = std::ldexp(1.0, -std::ilogb(m));
    const double dr = den.real() * s, di = den.imag() * s;
    const double d2 = dr * dr + di * di;
    const double re = (num.real() * dr + num.imag() * di) / d2;
    const double im = (num.imag() * dr - num.real() * di) / d2;
    return Cx(re * s, im * s);
}

// Set by eval when a principal log/sqrt/power argument lands on the negative
// real axis (|Im| <= 1e-12, Re < 0).  Evaluation still returns the principal
// value; the hit is only reported.
struct EvalDiagnostics {
    bool branch_cut_hit = false;
    Cx branch_cut_arg{0.0, 0.0};
};

// An analytic function on the unit disk, represented as an immutable
// expression tree over closed-form primitives and Taylor polynomials.
// Evaluation is deterministic and thread-safe; derivatives are exact
// (symbolic rules), never finite differences.
class AnalyticMap {
  public:
    struct Node;

    AnalyticMap() : AnalyticMap(constant(0.0)) {}

    static AnalyticMap constant(Cx value);
    static AnalyticMap identity();
    // Coefficient list, constant term first.
    static AnalyticMap polynomial(std::vector<Cx> coeffs);
    static AnalyticMap sum(AnalyticMap a, AnalyticMap b);
    static AnalyticMap product(AnalyticMap a, AnalyticMap b);
    static AnalyticMap quotient(AnalyticMap num, AnalyticMap den);
    // Principal branch w^alpha with real alpha; 1^alpha = 1.
    static AnalyticMap power(AnalyticMap base, double alpha);
    static AnalyticMap exp_of(AnalyticMap arg);
    static AnalyticMap log_of(AnalyticMap arg);
    static AnalyticMap sqrt_of(AnalyticMap arg);
    // outer(inner(z)); inner(0) is recorded on the node.
    static AnalyticMap compose(AnalyticMap outer, AnalyticMap inner);

    // Throws EvaluationError (DivisionByZero) when a quotient denominator has
    // magnitude below 1e-300 at z.
    Cx eval(Cx z) const;
    Cx eval(Cx z, EvalDiagnostics &diag) const;

    // Exact derivative tree (sum/product/quotient/chain rules, polynomial
    // differentiation).
    AnalyticMap derivative() const;

    nlohmann::json to_json() const;
    static AnalyticMap from_json(const nlohmann::json &spec);

  private:
    friend struct MapInternals;
    explicit AnalyticMap(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

inline AnalyticMap operator+(AnalyticMap a, AnalyticMap b) { return AnalyticMap::sum(std::move(a), std::move(b)); }
inline AnalyticMap operator*(AnalyticMap a, AnalyticMap b) { return AnalyticMap::product(std::move(a), std::move(b)); }
inline AnalyticMap operator/(AnalyticMap a, AnalyticMap b) { return AnalyticMap::quotient(std::move(a), std::move(b)); }
inline AnalyticMap operator+(AnalyticMap a, Cx b) { return std::move(a) + AnalyticMap::constant(b); }
inline AnalyticMap operator+(Cx a, AnalyticMap b) { return AnalyticMap::constant(a) + std::move(b); }
inline AnalyticMap operator*(AnalyticMap a, Cx b) { return std::move(a) * AnalyticMap::constant(b); }
inline AnalyticMap operator*(Cx a, AnalyticMap b) { return AnalyticMap::constant(a) * std::move(b); }
inline AnalyticMap operator-(AnalyticMap a, AnalyticMap b) {
    return std::move(a) + AnalyticMap::constant(-1.0) * std::move(b);
}

// eval of the exact derivative tree at z.
Cx eval_deriv(const AnalyticMap &f, Cx z);

// An analytic self-map of the disk with omega(0) = 0, built constructively:
//   omega(z) = phase * rho * z * prod_i (z - a_i) / (1 - conj(a_i) z)
// The construction gives |omega(z)| <= |z| on the disk by algebra.
struct SchwarzMap {
    double rho = 1.0;
    Cx phase{1.0, 0.0};
    std::vector<Cx> zeros;

    Cx eval(Cx z) const;
    // omega(z)/z, analytic through z = 0.
    Cx eval_div_z(Cx z) const;
    AnalyticMap as_analytic() const;
    std::string describe() const;
};

// Validates rho in (0,1] (InvalidScale), |phase| = 1, |a_i| < 1 - 1e-9
// (ZeroOutsideDisk); the phase is renormalized to exact modulus 1.
SchwarzMap make_schwarz(double rho, Cx phase, std::vector<Cx> zeros);

// Named test families.  Class-A members are normalized (f(0)=0, f'(0)=1);
// qc_composed yields a p-candidate with p(0)=1.
struct FamilySpec {
    std::string name;                // identity | koebe_like | moebius | exp_scaled | poly | qc_composed
    Cx a{1.0, 0.0};                  // moebius pole parameter
    double beta = 2.0;               // koebe_like exponent
    Cx alpha{0.0, 0.0};              // exp_scaled rate
    std::vector<Cx> coeffs;          // poly coefficients, constant term first
    double c = 1.0;                  // qc_composed lemniscate parameter
    SchwarzMap omega;                // qc_composed inner map
};

AnalyticMap make_named(const FamilySpec &spec);

} // namespace lemni
