#include "lemni/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include <nlohmann/json.hpp>

namespace lemni {

namespace {

constexpr double kDenomFloor = 1e-300;
constexpr double kBranchCutTol = 1e-12;

void note_branch_cut(Cx w, EvalDiagnostics *diag) {
    if (diag && !diag->branch_cut_hit && w.real() < 0.0 &&
        std::abs(w.imag()) <= kBranchCutTol) {
        diag->branch_cut_hit = true;
        diag->branch_cut_arg = w;
    }
}

std::string fmt_cx(Cx w) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", w.real(), w.imag());
    return buf;
}

} // namespace

struct AnalyticMap::Node {
    enum class Kind {
        constant,
        identity,
        sum,
        product,
        quotient,
        power,
        exp_fn,
        log_fn,
        sqrt_fn,
        poly,
        compose,
    };

    Kind kind;
    Cx value{0.0, 0.0};         // constant
    double exponent = 0.0;      // power
    std::vector<Cx> coeffs;     // poly, constant term first
    Cx inner_at_zero{0.0, 0.0}; // compose
    std::shared_ptr<const Node> left, right; // unary ops use left only
};

using Node = AnalyticMap::Node;
using Kind = Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

struct MapInternals {
    static AnalyticMap make(NodePtr n) { return AnalyticMap(std::move(n)); }
    static const NodePtr &root(const AnalyticMap &m) { return m.root_; }
};

namespace {

AnalyticMap binary(Kind kind, AnalyticMap a, AnalyticMap b) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->left = MapInternals::root(a);
    n->right = MapInternals::root(b);
    return MapInternals::make(std::move(n));
}

AnalyticMap unary(Kind kind, AnalyticMap a, double exponent = 0.0) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->exponent = exponent;
    n->left = MapInternals::root(a);
    return MapInternals::make(std::move(n));
}

} // namespace

AnalyticMap AnalyticMap::constant(Cx value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = value;
    return MapInternals::make(std::move(n));
}

AnalyticMap AnalyticMap::identity() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::identity;
    return MapInternals::make(std::move(n));
}

AnalyticMap AnalyticMap::polynomial(std::vector<Cx> coeffs) {
    if (coeffs.empty()) coeffs.push_back(Cx(0.0, 0.0));
    auto n = std::make_shared<Node>();
    n->kind = Kind::poly;
    n->coeffs = std::move(coeffs);
    return MapInternals::make(std::move(n));
}

AnalyticMap AnalyticMap::sum(AnalyticMap a, AnalyticMap b) { return binary(Kind::sum, std::move(a), std::move(b)); }
AnalyticMap AnalyticMap::product(AnalyticMap a, AnalyticMap b) { return binary(Kind::product, std::move(a), std::move(b)); }
AnalyticMap AnalyticMap::quotient(AnalyticMap num, AnalyticMap den) { return binary(Kind::quotient, std::move(num), std::move(den)); }
AnalyticMap AnalyticMap::exp_of(AnalyticMap arg) { return unary(Kind::exp_fn, std::move(arg)); }
AnalyticMap AnalyticMap::log_of(AnalyticMap arg) { return unary(Kind::log_fn, std::move(arg)); }
AnalyticMap AnalyticMap::sqrt_of(AnalyticMap arg) { return unary(Kind::sqrt_fn, std::move(arg)); }
AnalyticMap AnalyticMap::power(AnalyticMap base, double alpha) { return unary(Kind::power, std::move(base), alpha); }

AnalyticMap AnalyticMap::compose(AnalyticMap outer, AnalyticMap inner) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::compose;
    n->left = MapInternals::root(outer);
    n->right = MapInternals::root(inner);
    n->inner_at_zero = inner.eval(Cx(0.0, 0.0));
    return MapInternals::make(std::move(n));
}

namespace {

Cx eval_poly(const std::vector<Cx> &coeffs, Cx z) {
    Cx acc(0.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

Cx eval_node(const Node &n, Cx z, EvalDiagnostics *diag) {
    switch (n.kind) {
    case Kind::constant:
        return n.value;
    case Kind::identity:
        return z;
    case Kind::sum:
        return eval_node(*n.left, z, diag) + eval_node(*n.right, z, diag);
    case Kind::product:
        return eval_node(*n.left, z, diag) * eval_node(*n.right, z, diag);
    case Kind::quotient: {
        Cx num = eval_node(*n.left, z, diag);
        Cx den = eval_node(*n.right, z, diag);
        if (std::abs(den) < kDenomFloor)
            throw EvaluationError("DivisionByZero: quotient denominator vanishes at z=" + fmt_cx(z), z);
        return cx_div(num, den);
    }
    case Kind::power: {
        Cx base = eval_node(*n.left, z, diag);
        note_branch_cut(base, diag);
        if (base == Cx(1.0, 0.0)) return Cx(1.0, 0.0);
        return std::pow(base, n.exponent);
    }
    case Kind::exp_fn:
        return std::exp(eval_node(*n.left, z, diag));
    case Kind::log_fn: {
        Cx w = eval_node(*n.left, z, diag);
        note_branch_cut(w, diag);
        return std::log(w);
    }
    case Kind::sqrt_fn: {
        Cx w = eval_node(*n.left, z, diag);
        note_branch_cut(w, diag);
        return std::sqrt(w);
    }
    case Kind::poly:
        return eval_poly(n.coeffs, z);
    case Kind::compose:
        return eval_node(*n.left, eval_node(*n.right, z, diag), diag);
    }
    throw Error("corrupt expression tree");
}

} // namespace

Cx AnalyticMap::eval(Cx z) const { return eval_node(*root_, z, nullptr); }

Cx AnalyticMap::eval(Cx z, EvalDiagnostics &diag) const {
    return eval_node(*root_, z, &diag);
}

namespace {

AnalyticMap as_map(const NodePtr &n) { return MapInternals::make(n); }

AnalyticMap derive(const NodePtr &n) {
    switch (n->kind) {
    case Kind::constant:
        return AnalyticMap::constant(0.0);
    case Kind::identity:
        return AnalyticMap::constant(1.0);
    case Kind::sum:
        return derive(n->left) + derive(n->right);
    case Kind::product:
        return derive(n->left) * as_map(n->right) + as_map(n->left) * derive(n->right);
    case Kind::quotient: {
        AnalyticMap num = derive(n->left) * as_map(n->right) - as_map(n->left) * derive(n->right);
        return num / (as_map(n->right) * as_map(n->right));
    }
    case Kind::power:
        return AnalyticMap::constant(n->exponent) *
               AnalyticMap::power(as_map(n->left), n->exponent - 1.0) * derive(n->left);
    case Kind::exp_fn:
        return AnalyticMap::exp_of(as_map(n->left)) * derive(n->left);
    case Kind::log_fn:
        return derive(n->left) / as_map(n->left);
    case Kind::sqrt_fn:
        return derive(n->left) /
               (AnalyticMap::constant(2.0) * AnalyticMap::sqrt_of(as_map(n->left)));
    case Kind::poly: {
        std::vector<Cx> d;
        for (std::size_t i = 1; i < n->coeffs.size(); ++i)
            d.push_back(double(i) * n->coeffs[i]);
        return AnalyticMap::polynomial(std::move(d));
    }
    case Kind::compose:
        return AnalyticMap::compose(derive(n->left), as_map(n->right)) * derive(n->right);
    }
    throw Error("corrupt expression tree");
}

} // namespace

AnalyticMap AnalyticMap::derivative() const { return derive(root_); }

Cx eval_deriv(const AnalyticMap &f, Cx z) { return f.derivative().eval(z); }

// ── JSON form: {"op": ..., "args": [...], "params": {...}} ──────────────────

namespace {

nlohmann::json cx_to_json(Cx w) { return nlohmann::json::array({w.real(), w.imag()}); }

Cx cx_from_json(const nlohmann::json &j) {
    if (j.is_number()) return Cx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Cx(j[0].get<double>(), j[1].get<double>());
    throw InvalidParams("expected a number or [re, im] pair in function JSON");
}

nlohmann::json node_to_json(const Node &n) {
    using nlohmann::json;
    json j;
    switch (n.kind) {
    case Kind::constant:
        j["op"] = "const";
        j["params"] = {{"value", cx_to_json(n.value)}};
        break;
    case Kind::identity:
        j["op"] = "z";
        break;
    case Kind::sum:
    case Kind::product:
    case Kind::quotient:
        j["op"] = n.kind == Kind::sum ? "sum" : n.kind == Kind::product ? "product" : "quotient";
        j["args"] = json::array({node_to_json(*n.left), node_to_json(*n.right)});
        break;
    case Kind::power:
        j["op"] = "pow";
        j["args"] = json::array({node_to_json(*n.left)});
        j["params"] = {{"exponent", n.exponent}};
        break;
    case Kind::exp_fn:
    case Kind::log_fn:
    case Kind::sqrt_fn:
        j["op"] = n.kind == Kind::exp_fn ? "exp" : n.kind == Kind::log_fn ? "log" : "sqrt";
        j["args"] = json::array({node_to_json(*n.left)});
        break;
    case Kind::poly: {
        json cs = json::array();
        for (Cx c : n.coeffs) cs.push_back(cx_to_json(c));
        j["op"] = "poly";
        j["params"] = {{"coeffs", cs}};
        break;
    }
    case Kind::compose:
        j["op"] = "compose";
        j["args"] = json::array({node_to_json(*n.left), node_to_json(*n.right)});
        break;
    }
    return j;
}

} // namespace

nlohmann::json AnalyticMap::to_json() const { return node_to_json(*root_); }

AnalyticMap AnalyticMap::from_json(const nlohmann::json &spec) {
    if (!spec.is_object() || !spec.contains("op") || !spec["op"].is_string())
        throw InvalidParams("function JSON must be an object with an \"op\" string");
    const std::string op = spec["op"].get<std::string>();
    auto arg = [&](std::size_t i) -> AnalyticMap {
        if (!spec.contains("args") || !spec["args"].is_array() || spec["args"].size() <= i)
            throw InvalidParams("op \"" + op + "\" is missing argument " + std::to_string(i));
        return from_json(spec["args"][i]);
    };
    auto param = [&](const char *key) -> const nlohmann::json & {
        if (!spec.contains("params") || !spec["params"].contains(key))
            throw InvalidParams("op \"" + op + "\" is missing param \"" + key + "\"");
        return spec["params"][key];
    };

    if (op == "const") return constant(cx_from_json(param("value")));
    if (op == "z") return identity();
    if (op == "sum") return sum(arg(0), arg(1));
    if (op == "product") return product(arg(0), arg(1));
    if (op == "quotient") return quotient(arg(0), arg(1));
    if (op == "pow") {
        const auto &e = param("exponent");
        if (!e.is_number()) throw InvalidParams("pow exponent must be a real number");
        return power(arg(0), e.get<double>());
    }
    if (op == "exp") return exp_of(arg(0));
    if (op == "log") return log_of(arg(0));
    if (op == "sqrt") return sqrt_of(arg(0));
    if (op == "poly") {
        std::vector<Cx> cs;
        for (const auto &c : param("coeffs")) cs.push_back(cx_from_json(c));
        return polynomial(std::move(cs));
    }
    if (op == "compose") return compose(arg(0), arg(1));
    throw InvalidParams("unknown op \"" + op + "\" in function JSON");
}

// ── SchwarzMap ───────────────────────────────────────────────────────────────

Cx SchwarzMap::eval(Cx z) const { return z * eval_div_z(z); }

Cx SchwarzMap::eval_div_z(Cx z) const {
    Cx acc = phase * rho;
    for (Cx a : zeros) acc *= (z - a) / (Cx(1.0, 0.0) - std::conj(a) * z);
    return acc;
}

AnalyticMap SchwarzMap::as_analytic() const {
    AnalyticMap w = AnalyticMap::constant(phase * rho) * AnalyticMap::identity();
    for (Cx a : zeros) {
        AnalyticMap num = AnalyticMap::identity() + AnalyticMap::constant(-a);
        AnalyticMap den = AnalyticMap::constant(1.0) +
                          AnalyticMap::constant(-std::conj(a)) * AnalyticMap::identity();
        w = w * (num / den);
    }
    return w;
}

std::string SchwarzMap::describe() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", rho);
    std::string s = "schwarz(rho=";
    s += buf;
    s += ",phase=" + fmt_cx(phase) + ",zeros=[";
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (i) s += ",";
        s += fmt_cx(zeros[i]);
    }
    return s + "])";
}

SchwarzMap make_schwarz(double rho, Cx phase, std::vector<Cx> zeros) {
    if (!(rho > 0.0) || rho > 1.0)
        throw InvalidParams("InvalidScale: rho must lie in (0, 1]");
    double pm = std::abs(phase);
    if (std::abs(pm - 1.0) > 1e-9)
        throw InvalidParams("phase must be unimodular");
    for (Cx a : zeros) {
        if (std::abs(a) >= 1.0 - 1e-9)
            throw InvalidParams("ZeroOutsideDisk: each |a_i| must be < 1 - 1e-9");
    }
    SchwarzMap w;
    w.rho = rho;
    w.phase = phase / pm;
    w.zeros = std::move(zeros);
    return w;
}

// ── Named families ───────────────────────────────────────────────────────────

AnalyticMap make_named(const FamilySpec &spec) {
    const AnalyticMap z = AnalyticMap::identity();
    if (spec.name == "identity") return z;
    if (spec.name == "koebe_like") {
        // z / (1-z)^beta
        AnalyticMap base = AnalyticMap::constant(1.0) + AnalyticMap::constant(-1.0) * z;
        return z / AnalyticMap::power(base, spec.beta);
    }
    if (spec.name == "moebius") {
        AnalyticMap den = AnalyticMap::constant(1.0) + AnalyticMap::constant(-spec.a) * z;
        return z / den;
    }
    if (spec.name == "exp_scaled")
        return z * AnalyticMap::exp_of(AnalyticMap::constant(spec.alpha) * z);
    if (spec.name == "poly") {
        if (spec.coeffs.size() < 2 || spec.coeffs[0] != Cx(0.0, 0.0) ||
            spec.coeffs[1] != Cx(1.0, 0.0))
            throw InvalidParams("NonNormalized: poly family needs a_0 = 0 and a_1 = 1");
        return AnalyticMap::polynomial(spec.coeffs);
    }
    if (spec.name == "qc_composed") {
        if (!(spec.c > 0.0) || spec.c > 1.0)
            throw InvalidParams("qc_composed needs c in (0, 1]");
        AnalyticMap outer = AnalyticMap::sqrt_of(
            AnalyticMap::constant(1.0) + AnalyticMap::constant(spec.c) * AnalyticMap::identity());
        return AnalyticMap::compose(outer, spec.omega.as_analytic());
    }
    throw InvalidParams("UnknownFamily: \"" + spec.name + "\"");
}

} // namespace lemni
