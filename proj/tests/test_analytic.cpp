#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "lemni/analytic.hpp"
#include "lemni/rng.hpp"

using lemni::AnalyticMap;
using lemni::Cx;
using lemni::Rng;

namespace {

// Independent derivative oracle: central finite difference with real step.
Cx finite_difference(const AnalyticMap &f, Cx z, double h = 1e-6) {
    return (f.eval(z + Cx(h, 0.0)) - f.eval(z - Cx(h, 0.0))) / (2.0 * h);
}

AnalyticMap zmap() { return AnalyticMap::identity(); }

std::vector<std::pair<std::string, AnalyticMap>> derivative_test_functions() {
    const AnalyticMap z = zmap();
    const AnalyticMap one = AnalyticMap::constant(1.0);
    std::vector<std::pair<std::string, AnalyticMap>> fs;
    fs.emplace_back("identity", z);
    fs.emplace_back("z/(1-z)", z / (one + AnalyticMap::constant(-1.0) * z));
    fs.emplace_back("sqrt(1+z)", AnalyticMap::sqrt_of(one + z));
    fs.emplace_back("exp(0.4z)*z", z * AnalyticMap::exp_of(AnalyticMap::constant(0.4) * z));
    fs.emplace_back("log(1+z/2)", AnalyticMap::log_of(one + AnalyticMap::constant(0.5) * z));
    fs.emplace_back("(1-z)^-1.7", AnalyticMap::power(one + AnalyticMap::constant(-1.0) * z, -1.7));
    fs.emplace_back("poly", AnalyticMap::polynomial({Cx(0.0, 0.0), Cx(1.0, 0.0), Cx(0.2, 0.1),
                                                     Cx(-0.1, 0.05), Cx(0.0, -0.07)}));
    fs.emplace_back("compose(sqrt(1+w), z/2)",
                    AnalyticMap::compose(AnalyticMap::sqrt_of(one + z),
                                         AnalyticMap::constant(0.5) * z));
    fs.emplace_back("quotient of polys",
                    AnalyticMap::polynomial({Cx(1.0, 0.0), Cx(0.3, 0.2)}) /
                        AnalyticMap::polynomial({Cx(2.0, 0.0), Cx(0.0, 0.0), Cx(0.5, 0.0)}));
    return fs;
}

} // namespace

TEST_CASE("eval: basic examples") {
    const AnalyticMap z = zmap();
    CHECK(z.eval(Cx(0.3, 0.1)) == Cx(0.3, 0.1));

    const AnalyticMap root = AnalyticMap::sqrt_of(AnalyticMap::constant(1.0) + z);
    CHECK(std::abs(root.eval(Cx(-1.0 + 1e-15, 0.0))) < 1e-6); // sqrt(0) limit at the cusp

    const AnalyticMap moeb = z / (AnalyticMap::constant(1.0) + AnalyticMap::constant(-1.0) * z);
    CHECK(std::abs(moeb.eval(Cx(0.5, 0.0)) - Cx(1.0, 0.0)) < 1e-14);
}

TEST_CASE("eval: principal branches fix sqrt(1)=1, log(1)=0, 1^a=1") {
    const AnalyticMap one = AnalyticMap::constant(1.0);
    CHECK(AnalyticMap::sqrt_of(one).eval(Cx(0.2, 0.2)) == Cx(1.0, 0.0));
    CHECK(AnalyticMap::log_of(one).eval(Cx(0.2, 0.2)) == Cx(0.0, 0.0));
    CHECK(AnalyticMap::power(one, 3.7).eval(Cx(0.2, 0.2)) == Cx(1.0, 0.0));
}

TEST_CASE("eval_deriv: closed-form spot checks") {
    const AnalyticMap z = zmap();
    const AnalyticMap z2 = z * z;
    CHECK(std::abs(lemni::eval_deriv(z2, Cx(0.5, 0.0)) - Cx(1.0, 0.0)) < 1e-15);

    const AnalyticMap qc = AnalyticMap::sqrt_of(AnalyticMap::constant(1.0) + z);
    CHECK(std::abs(lemni::eval_deriv(qc, Cx(0.0, 0.0)) - Cx(0.5, 0.0)) < 1e-15);

    CHECK(std::abs(lemni::eval_deriv(AnalyticMap::exp_of(z), Cx(0.0, 0.0)) - Cx(1.0, 0.0)) <
          1e-15);
}

TEST_CASE("eval_deriv agrees with the finite-difference oracle") {
    Rng rng(2024);
    for (const auto &[name, f] : derivative_test_functions()) {
        CAPTURE(name);
        const AnalyticMap df = f.derivative();
        for (int i = 0; i < 100; ++i) {
            const Cx z = rng.uniform_disk(0.9);
            const Cx exact = df.eval(z);
            const Cx approx = finite_difference(f, z);
            const double rel = std::abs(exact - approx) / std::max(1.0, std::abs(exact));
            CAPTURE(z.real());
            CAPTURE(z.imag());
            CHECK(rel < 1e-6);
        }
    }
}

TEST_CASE("second derivative through the derivative tree") {
    // f = z^3: f'' = 6z
    const AnalyticMap z = zmap();
    const AnalyticMap f = z * z * z;
    const AnalyticMap d2 = f.derivative().derivative();
    CHECK(std::abs(d2.eval(Cx(0.25, -0.1)) - Cx(1.5, -0.6)) < 1e-13);
}

TEST_CASE("composition consistency: same code path") {
    const AnalyticMap z = zmap();
    const AnalyticMap outer = AnalyticMap::sqrt_of(AnalyticMap::constant(1.0) + z);
    const AnalyticMap inner = AnalyticMap::constant(Cx(0.3, 0.4)) * z;
    const AnalyticMap comp = AnalyticMap::compose(outer, inner);
    Rng rng(7);
    for (int i = 0; i < 32; ++i) {
        const Cx p = rng.uniform_disk(0.95);
        CHECK(comp.eval(p) == outer.eval(inner.eval(p)));
    }
}

TEST_CASE("eval is deterministic (bitwise)") {
    const AnalyticMap f = derivative_test_functions()[5].second;
    const Cx z(0.123456789, -0.3);
    CHECK(f.eval(z) == f.eval(z));
}

TEST_CASE("DivisionByZero carries the offending point") {
    const AnalyticMap z = zmap();
    const AnalyticMap f = z / (z + AnalyticMap::constant(-0.5));
    CHECK_THROWS_AS((void)f.eval(Cx(0.5, 0.0)), lemni::EvaluationError);
    try {
        (void)f.eval(Cx(0.5, 0.0));
    } catch (const lemni::EvaluationError &e) {
        CHECK(e.has_where);
        CHECK(e.where == Cx(0.5, 0.0));
    }
}

TEST_CASE("branch-cut hits are reported, value still principal") {
    const AnalyticMap f = AnalyticMap::log_of(zmap());
    lemni::EvalDiagnostics diag;
    const Cx v = f.eval(Cx(-0.5, 0.0), diag);
    CHECK(diag.branch_cut_hit);
    CHECK(v.real() == doctest::Approx(std::log(0.5)));
    CHECK(v.imag() == doctest::Approx(M_PI));

    lemni::EvalDiagnostics clean;
    (void)f.eval(Cx(0.5, 0.3), clean);
    CHECK(!clean.branch_cut_hit);
}

TEST_CASE("JSON round trip preserves structure and values") {
    Rng rng(99);
    for (const auto &[name, f] : derivative_test_functions()) {
        CAPTURE(name);
        const nlohmann::json j = f.to_json();
        const AnalyticMap g = AnalyticMap::from_json(j);
        CHECK(g.to_json().dump() == j.dump());
        for (int i = 0; i < 16; ++i) {
            const Cx z = rng.uniform_disk(0.85);
            CHECK(f.eval(z) == g.eval(z));
        }
    }
}

TEST_CASE("JSON parse errors are InvalidParams") {
    CHECK_THROWS_AS((void)AnalyticMap::from_json(nlohmann::json{{"op", "frobnicate"}}),
                    lemni::InvalidParams);
    CHECK_THROWS_AS((void)AnalyticMap::from_json(nlohmann::json{{"op", "sum"}}),
                    lemni::InvalidParams);
}

TEST_CASE("make_named families") {
    lemni::FamilySpec spec;
    spec.name = "identity";
    const AnalyticMap id = make_named(spec);
    CHECK(std::abs(lemni::eval_deriv(id, Cx(0.0, 0.0)) - Cx(1.0, 0.0)) < 1e-15);

    spec.name = "moebius";
    spec.a = Cx(1.0, 0.0);
    const AnalyticMap half_plane = make_named(spec);
    CHECK(std::abs(half_plane.eval(Cx(0.5, 0.0)) - Cx(1.0, 0.0)) < 1e-14);

    spec = lemni::FamilySpec{};
    spec.name = "qc_composed";
    spec.c = 1.0;
    spec.omega = lemni::make_schwarz(1.0, Cx(1.0, 0.0), {});
    const AnalyticMap p = make_named(spec);
    CHECK(p.eval(Cx(0.0, 0.0)) == Cx(1.0, 0.0));
    CHECK(std::abs(p.eval(Cx(0.3, 0.0)) - std::sqrt(Cx(1.3, 0.0))) < 1e-14);

    spec = lemni::FamilySpec{};
    spec.name = "poly";
    spec.coeffs = {Cx(0.0, 0.0), Cx(2.0, 0.0)}; // a_1 != 1
    CHECK_THROWS_AS((void)make_named(spec), lemni::InvalidParams);

    spec.name = "no_such_family";
    CHECK_THROWS_AS((void)make_named(spec), lemni::InvalidParams);

    // normalization across families: f(0) = 0, f'(0) = 1
    for (const char *name : {"identity", "koebe_like", "exp_scaled"}) {
        lemni::FamilySpec s;
        s.name = name;
        s.beta = 1.3;
        s.alpha = Cx(0.4, 0.1);
        const AnalyticMap f = make_named(s);
        CHECK(std::abs(f.eval(Cx(0.0, 0.0))) < 1e-15);
        CHECK(std::abs(lemni::eval_deriv(f, Cx(0.0, 0.0)) - Cx(1.0, 0.0)) < 1e-13);
    }
}

TEST_CASE("make_schwarz: examples and validation") {
    const auto w_id = lemni::make_schwarz(1.0, Cx(1.0, 0.0), {});
    CHECK(w_id.eval(Cx(0.37, -0.2)) == Cx(0.37, -0.2));

    const auto w_half = lemni::make_schwarz(0.5, Cx(1.0, 0.0), {});
    CHECK(std::abs(w_half.eval(Cx(0.8, 0.0))) == doctest::Approx(0.4));

    CHECK_THROWS_AS((void)lemni::make_schwarz(0.0, Cx(1.0, 0.0), {}), lemni::InvalidParams);
    CHECK_THROWS_AS((void)lemni::make_schwarz(1.2, Cx(1.0, 0.0), {}), lemni::InvalidParams);
    CHECK_THROWS_AS((void)lemni::make_schwarz(1.0, Cx(1.0, 0.0), {Cx(1.0, 0.0)}),
                    lemni::InvalidParams);
    CHECK_THROWS_AS((void)lemni::make_schwarz(1.0, Cx(0.5, 0.0), {}), lemni::InvalidParams);
}

TEST_CASE("Schwarz bound |omega(z)| <= |z| on random maps") {
    Rng rng(31337);
    for (int trial = 0; trial < 12; ++trial) {
        const double rho = rng.uniform(0.2, 1.0);
        const Cx phase = rng.uniform_phase();
        std::vector<Cx> zeros;
        const auto nz = rng.uniform_index(4);
        for (std::uint64_t i = 0; i < nz; ++i) zeros.push_back(rng.uniform_disk(0.9));
        const auto w = lemni::make_schwarz(rho, phase, zeros);
        for (int i = 0; i < 1000; ++i) {
            const Cx z = rng.uniform_disk(0.999);
            CHECK(std::abs(w.eval(z)) <= std::abs(z) + 1e-12);
        }
    }

    // the single-zero example at |z| = 0.9
    const auto w = lemni::make_schwarz(1.0, Cx(1.0, 0.0), {Cx(0.5, 0.0)});
    Rng rng2(5);
    for (int i = 0; i < 1000; ++i) {
        const Cx z = std::polar(0.9, rng2.uniform(0.0, 2.0 * M_PI));
        CHECK(std::abs(w.eval(z)) <= 0.9 + 1e-12);
    }
}

TEST_CASE("SchwarzMap tree form matches direct evaluation") {
    Rng rng(271828);
    const auto w = lemni::make_schwarz(0.8, std::polar(1.0, 0.77),
                                       {Cx(0.3, -0.2), Cx(-0.5, 0.1)});
    const AnalyticMap tree = w.as_analytic();
    for (int i = 0; i < 64; ++i) {
        const Cx z = rng.uniform_disk(0.95);
        CHECK(std::abs(tree.eval(z) - w.eval(z)) < 1e-14);
    }
    // omega(z)/z at the origin: phase * rho * prod(-a_i)
    const Cx expected = std::polar(1.0, 0.77) * 0.8 * (Cx(-0.3, 0.2) * Cx(0.5, -0.1));
    CHECK(std::abs(w.eval_div_z(Cx(0.0, 0.0)) - expected) < 1e-15);
}
