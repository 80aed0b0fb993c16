#include "lemni/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lemni {

namespace {

double cross(Cx o, Cx a, Cx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

} // namespace

Cx q_eval(double c, Cx z) {
    if (!(c > 0.0) || c > 1.0) throw InvalidParams("q_eval needs c in (0, 1]");
    return std::sqrt(Cx(1.0, 0.0) + c * z);
}

Lemniscate::Lemniscate(double c_) : c(c_) {
    if (!(c > 0.0) || c > 1.0) throw InvalidParams("Lemniscate needs c in (0, 1]");
}

JanowskiDisk::JanowskiDisk(double A_, double B_) : A(A_), B(B_) {
    if (std::abs(A) > 1.0) throw InvalidParams("JanowskiDisk needs |A| <= 1");
    if (std::abs(B) >= 1.0) throw InvalidParams("JanowskiDisk needs |B| < 1");
    if (A == B) throw InvalidParams("JanowskiDisk needs A != B");
}

Containment contains_with_margin(const TargetRegion &region, Cx w) {
    return std::visit(
        [&](const auto &r) -> Containment {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Lemniscate>) {
                double margin = std::min(w.real(), r.c - std::abs(w * w - Cx(1.0, 0.0)));
                return {margin > 0.0, margin};
            } else if constexpr (std::is_same_v<R, JanowskiDisk>) {
                double den = std::abs(Cx(r.A, 0.0) - r.B * w);
                if (den < 1e-12) return {false, kMarginNegInf};
                double margin = (den - std::abs(w - Cx(1.0, 0.0))) / den;
                return {margin > 0.0, margin};
            } else if constexpr (std::is_same_v<R, HalfPlaneShifted>) {
                double margin = w.real() - r.t0;
                return {margin > 0.0, margin};
            } else {
                int wn = winding_number(r.vertices, w);
                double d = distance_to_polygon(r.vertices, w);
                bool inside = (wn == 1);
                return {inside, inside ? d : -d};
            }
        },
        region);
}

std::optional<Cx> region_base_point(const TargetRegion &region) {
    return std::visit(
        [&](const auto &r) -> std::optional<Cx> {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Lemniscate> || std::is_same_v<R, JanowskiDisk>)
                return Cx(1.0, 0.0);
            else if constexpr (std::is_same_v<R, BoundaryPolygonRegion>)
                return r.base;
            else
                return std::nullopt;
        },
        region);
}

std::vector<Cx> boundary_samples(const TargetRegion &region, int n) {
    if (n < 16) throw InvalidParams("TooFewSamples: boundary sampling needs n >= 16");
    return std::visit(
        [&](const auto &r) -> std::vector<Cx> {
            using R = std::decay_t<decltype(r)>;
            std::vector<Cx> pts;
            if constexpr (std::is_same_v<R, Lemniscate>) {
                pts.reserve(n);
                for (int j = 0; j < n; ++j)
                    pts.push_back(q_eval(r.c, std::polar(1.0, 2.0 * M_PI * j / n)));
                return pts;
            } else if constexpr (std::is_same_v<R, JanowskiDisk>) {
                if (!(r.B < r.A))
                    throw InvalidParams("Janowski boundary sampling needs B < A");
                double denom = 1.0 - r.B * r.B;
                double center = (1.0 - r.A * r.B) / denom;
                double radius = (r.A - r.B) / denom;
                pts.reserve(n);
                for (int j = 0; j < n; ++j)
                    pts.push_back(Cx(center, 0.0) + radius * std::polar(1.0, 2.0 * M_PI * j / n));
                return pts;
            } else if constexpr (std::is_same_v<R, BoundaryPolygonRegion>) {
                return r.vertices;
            } else {
                throw InvalidParams("half-plane has no closed boundary polyline");
            }
        },
        region);
}

int winding_number(const std::vector<Cx> &polygon, Cx w) {
    int wn = 0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Cx &p1 = polygon[i];
        const Cx &p2 = polygon[(i + 1) % n];
        if (p1.imag() <= w.imag()) {
            if (p2.imag() > w.imag() && cross(p1, p2, w) > 0.0) ++wn;
        } else if (p2.imag() <= w.imag() && cross(p1, p2, w) < 0.0) {
            --wn;
        }
    }
    return wn;
}

double distance_to_polygon(const std::vector<Cx> &polygon, Cx w) {
    const std::size_t n = polygon.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Cx a = polygon[i];
        const Cx b = polygon[(i + 1) % n];
        const Cx ab = b - a;
        const double len2 = std::norm(ab);
        double t = 0.0;
        if (len2 > 0.0) {
            t = ((w.real() - a.real()) * ab.real() + (w.imag() - a.imag()) * ab.imag()) / len2;
            t = std::clamp(t, 0.0, 1.0);
        }
        best = std::min(best, std::abs(w - (a + t * ab)));
    }
    return best;
}

namespace {

bool segments_cross(Cx p1, Cx p2, Cx q1, Cx q2) {
    double d1 = cross(q1, q2, p1);
    double d2 = cross(q1, q2, p2);
    double d3 = cross(p1, p2, q1);
    double d4 = cross(p1, p2, q2);
    return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
           ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

} // namespace

BoundaryPolygonRegion region_from_univalent_boundary(const AnalyticMap &g, double r, int n) {
    if (!(r > 0.0) || r >= 1.0)
        throw InvalidParams("boundary radius must lie in (0, 1)");
    if (n < 512) throw InvalidParams("TooFewSamples: polygon regions need n >= 512");

    BoundaryPolygonRegion region;
    region.base = g.eval(Cx(0.0, 0.0));
    region.vertices.reserve(n);
    for (int j = 0; j < n; ++j)
        region.vertices.push_back(g.eval(std::polar(r, 2.0 * M_PI * j / n)));

    int wn = winding_number(region.vertices, region.base);
    if (wn != 1)
        throw InvalidParams("SelfIntersectingBoundary: winding number about the base point is " +
                            std::to_string(wn) + ", expected 1");

    for (int i = 0; i < n; ++i) {
        const Cx p1 = region.vertices[i];
        const Cx p2 = region.vertices[(i + 1) % n];
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // adjacent through the wrap
            const Cx q1 = region.vertices[j];
            const Cx q2 = region.vertices[(j + 1) % n];
            if (segments_cross(p1, p2, q1, q2))
                throw InvalidParams("SelfIntersectingBoundary: segments " + std::to_string(i) +
                                    " and " + std::to_string(j) + " cross");
        }
    }
    return region;
}

bool is_convex_boundary(const std::vector<Cx> &points) {
    const std::size_t n = points.size();
    if (n < 3) return false;
    for (std::size_t j = 0; j < n; ++j) {
        const Cx a = points[j];
        const Cx b = points[(j + 1) % n];
        const Cx c = points[(j + 2) % n];
        if (cross(a, b, c) < -1e-12) return false;
    }
    return true;
}

void write_boundary_csv(std::ostream &out, const std::vector<Cx> &points) {
    out << "theta,re,im\n";
    char buf[128];
    const std::size_t n = points.size();
    for (std::size_t j = 0; j < n; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", 2.0 * M_PI * j / double(n),
                      points[j].real(), points[j].imag());
        out << buf;
    }
}

void write_boundary_svg(std::ostream &out, const std::vector<Cx> &points) {
    double xmin = 1e308, xmax = -1e308, ymin = 1e308, ymax = -1e308;
    for (Cx p : points) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, -p.imag());
        ymax = std::max(ymax, -p.imag());
    }
    double w = xmax - xmin, h = ymax - ymin;
    double pad = 0.05 * std::max(w, h);
    double stroke = 0.002 * std::max(w, h);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6g %.6g %.6g %.6g\">\n",
                  xmin - pad, ymin - pad, w + 2 * pad, h + 2 * pad);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"%.6g\" points=\"",
                  stroke);
    out << buf;
    for (std::size_t j = 0; j <= points.size(); ++j) {
        const Cx p = points[j % points.size()];
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g ", p.real(), -p.imag());
        out << buf;
    }
    out << "\"/>\n</svg>\n";
}

} // namespace lemni
