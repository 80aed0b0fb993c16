#pragma once

#include <optional>
#include <ostream>
#include <variant>
#include <vector>

#include "lemni/analytic.hpp"

namespace lemni {

// Sentinel margin for degenerate / blown-up membership tests ("minus
// infinity" that still serializes as a plain double).
constexpr double kMarginNegInf = -1e300;

// Principal-branch sqrt(1 + c z); the value 1 at z = 0, and 0 at the
// branch point z = -1, c = 1.
Cx q_eval(double c, Cx z);

// {w : Re w > 0, |w^2 - 1| < c}, the region enclosed by the right lobe of a
// Bernoulli-type lemniscate with foci +-1.
struct Lemniscate {
    double c;
    explicit Lemniscate(double c_);
};

// Image of the disk under (1+Az)/(1+Bz): membership |w - 1| < |A - Bw|.
struct JanowskiDisk {
    double A, B;
    JanowskiDisk(double A_, double B_);
};

// {w : Re w > t0}
struct HalfPlaneShifted {
    double t0;
    explicit HalfPlaneShifted(double t0_) : t0(t0_) {}
};

// Region bounded by ordered samples of a univalent map's boundary curve;
// membership by winding number = 1 about the query point.
struct BoundaryPolygonRegion {
    std::vector<Cx> vertices; // counterclockwise, closed implicitly
    Cx base;                  // g(0)
};

using TargetRegion =
    std::variant<Lemniscate, JanowskiDisk, HalfPlaneShifted, BoundaryPolygonRegion>;

struct Containment {
    bool inside;
    double margin; // > 0 strictly inside, <= 0 outside or on the boundary
};

// Signed margins: Lemniscate min(Re w, c - |w^2-1|); Janowski
// (|A-Bw| - |w-1|)/|A-Bw| (sentinel when |A-Bw| < 1e-12); half-plane
// Re w - t0; polygon signed distance with winding-number sign.
Containment contains_with_margin(const TargetRegion &region, Cx w);

// Base point for subordination checks: 1 for Lemniscate / JanowskiDisk,
// g(0) for polygon regions, none for half-planes.
std::optional<Cx> region_base_point(const TargetRegion &region);

// Boundary polyline, counterclockwise.  Lemniscate: q_c(e^{2 pi i j/n});
// Janowski (requires B < A): circle center (1-AB)/(1-B^2), radius
// (A-B)/(1-B^2); polygon regions return their stored samples.  n >= 16.
std::vector<Cx> boundary_samples(const TargetRegion &region, int n);

// Polygon through g(r e^{i theta_j}), j = 0..n-1, base g(0).  Rejects
// boundaries whose winding number about the base differs from 1 or whose
// segments properly cross (SelfIntersectingBoundary).  n >= 512.
BoundaryPolygonRegion region_from_univalent_boundary(const AnalyticMap &g, double r, int n);

// True iff every consecutive cross product (wraparound included) is
// >= -1e-12 for the counterclockwise point list.
bool is_convex_boundary(const std::vector<Cx> &points);

int winding_number(const std::vector<Cx> &polygon, Cx w);
double distance_to_polygon(const std::vector<Cx> &polygon, Cx w);

// CSV rows "theta,re,im" with theta_j = 2 pi j / n.
void write_boundary_csv(std::ostream &out, const std::vector<Cx> &points);
// SVG polyline, viewBox fitted to the points, stroke width 0.002 of the
// larger bounding-box side.  The y axis is flipped to match plot orientation.
void write_boundary_svg(std::ostream &out, const std::vector<Cx> &points);

} // namespace lemni
