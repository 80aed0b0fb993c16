#include "lemni/quadrature.hpp"

#include <array>
#include <cmath>

#include "lemni/errors.hpp"

namespace lemni {

namespace {

using Cx = std::complex<double>;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
template <int N> struct GaussRule {
    std::array<double, N> x{};
    std::array<double, N> w{};

    GaussRule() {
        const int m = (N + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = 1.0, p2 = 0.0;
                for (int j = 0; j < N; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * xi * p2 - j * p3) / (j + 1.0);
                }
                pp = N * (xi * p1 - p2) / (xi * xi - 1.0);
                double dx = p1 / pp;
                xi -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            x[i] = -xi;
            x[N - 1 - i] = xi;
            w[i] = w[N - 1 - i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
        }
    }

    Cx apply(const std::function<Cx(double)> &f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        Cx acc(0.0, 0.0);
        for (int i = 0; i < N; ++i) acc += w[i] * f(mid + half * x[i]);
        return half * acc;
    }
};

const GaussRule<7> &rule7() {
    static const GaussRule<7> r;
    return r;
}
const GaussRule<15> &rule15() {
    static const GaussRule<15> r;
    return r;
}

Cx adaptive(const std::function<Cx(double)> &f, double a, double b, double tol,
            int depth, int max_depth) {
    Cx coarse = rule7().apply(f, a, b);
    Cx fine = rule15().apply(f, a, b);
    if (std::abs(fine - coarse) <= tol) return fine;
    if (depth >= max_depth)
        throw EvaluationError("QuadratureNotConverged: tolerance unmet at max depth");
    double mid = 0.5 * (a + b);
    return adaptive(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
           adaptive(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

Cx integrate_gauss_legendre(const std::function<Cx(double)> &f, double a, double b,
                            double tol, int max_depth) {
    if (a == b) return Cx(0.0, 0.0);
    return adaptive(f, a, b, tol, 0, max_depth);
}

Cx integrate_segment(const std::function<Cx(Cx)> &g, Cx z, double tol, int max_depth) {
    if (z == Cx(0.0, 0.0)) return Cx(0.0, 0.0);
    auto along = [&](double s) { return z * g(s * z); };
    return integrate_gauss_legendre(along, 0.0, 1.0, tol, max_depth);
}

} // namespace lemni
