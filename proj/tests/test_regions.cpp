#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lemni/regions.hpp"
#include "lemni/rng.hpp"

using lemni::AnalyticMap;
using lemni::BoundaryPolygonRegion;
using lemni::Cx;
using lemni::HalfPlaneShifted;
using lemni::JanowskiDisk;
using lemni::Lemniscate;
using lemni::Rng;
using lemni::TargetRegion;

TEST_CASE("q_eval: value 1 at 0, 0 at the branch point, hand value at z=1") {
    CHECK(lemni::q_eval(0.37, Cx(0.0, 0.0)) == Cx(1.0, 0.0));
    CHECK(std::abs(lemni::q_eval(1.0, Cx(-1.0, 0.0))) == 0.0);
    CHECK(std::abs(lemni::q_eval(0.5, Cx(1.0, 0.0)) - Cx(std::sqrt(1.5), 0.0)) < 1e-12);
    CHECK_THROWS_AS((void)lemni::q_eval(0.0, Cx(0.0, 0.0)), lemni::InvalidParams);
    CHECK_THROWS_AS((void)lemni::q_eval(1.5, Cx(0.0, 0.0)), lemni::InvalidParams);
}

TEST_CASE("contains_with_margin: spot values") {
    const TargetRegion lem_half = Lemniscate(0.5);
    const auto center = contains_with_margin(lem_half, Cx(1.0, 0.0));
    CHECK(center.inside);
    CHECK(center.margin == doctest::Approx(0.5).epsilon(1e-14));

    const TargetRegion lem_one = Lemniscate(1.0);
    const auto boundary = contains_with_margin(lem_one, Cx(std::sqrt(2.0), 0.0));
    CHECK(!boundary.inside);
    CHECK(std::abs(boundary.margin) < 1e-14);

    const TargetRegion jan = JanowskiDisk(1.0, 0.0);
    const auto rim = contains_with_margin(jan, Cx(2.0, 0.0));
    CHECK(!rim.inside);
    CHECK(std::abs(rim.margin) < 1e-14);

    const TargetRegion hp = HalfPlaneShifted(2.5);
    CHECK(contains_with_margin(hp, Cx(3.0, 7.0)).margin == doctest::Approx(0.5));
    CHECK(!contains_with_margin(hp, Cx(2.0, 0.0)).inside);
}

TEST_CASE("Janowski degenerate denominator returns the sentinel") {
    const TargetRegion jan = JanowskiDisk(0.25, 0.5); // |A - Bw| = 0 at w = 0.5
    const auto r = contains_with_margin(jan, Cx(0.5, 0.0));
    CHECK(!r.inside);
    CHECK(r.margin == lemni::kMarginNegInf);
}

TEST_CASE("region validation") {
    CHECK_THROWS_AS(Lemniscate(0.0), lemni::InvalidParams);
    CHECK_THROWS_AS(Lemniscate(1.0001), lemni::InvalidParams);
    CHECK_THROWS_AS(JanowskiDisk(1.2, 0.0), lemni::InvalidParams);
    CHECK_THROWS_AS(JanowskiDisk(1.0, 1.0), lemni::InvalidParams);
    CHECK_THROWS_AS(JanowskiDisk(0.5, 0.5), lemni::InvalidParams);
}

TEST_CASE("lemniscate boundary identity |q^2 - 1| = c") {
    for (double c : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
        const auto pts = boundary_samples(TargetRegion(Lemniscate(c)), 256);
        REQUIRE(pts.size() == 256);
        for (const Cx w : pts)
            CHECK(std::abs(std::abs(w * w - Cx(1.0, 0.0)) - c) < 1e-12);
    }
    CHECK_THROWS_AS((void)boundary_samples(TargetRegion(Lemniscate(0.5)), 4),
                    lemni::InvalidParams);
}

TEST_CASE("lemniscate boundary endpoints: sqrt(1+c) and sqrt(1-c)") {
    const auto pts = boundary_samples(TargetRegion(Lemniscate(0.2)), 2048);
    CHECK(std::abs(pts[0] - Cx(std::sqrt(1.2), 0.0)) < 1e-12);
    double min_re = 1e300;
    for (const Cx w : pts) min_re = std::min(min_re, w.real());
    CHECK(std::abs(min_re - std::sqrt(0.8)) < 1e-12);
}

TEST_CASE("Janowski boundary is the image circle") {
    const auto pts = boundary_samples(TargetRegion(JanowskiDisk(1.0, 0.0)), 64);
    for (const Cx w : pts) CHECK(std::abs(std::abs(w - Cx(1.0, 0.0)) - 1.0) < 1e-14);

    // general ordering -1 <= B < A <= 1: predicate agrees with the disk test
    Rng rng(4242);
    for (int draw = 0; draw < 20; ++draw) {
        const double B = rng.uniform(-0.99, 0.99);
        const double A = rng.uniform(B + 0.01, 1.0);
        if (A > 1.0) continue;
        const JanowskiDisk disk(A, B);
        const double center = (1.0 - A * B) / (1.0 - B * B);
        const double radius = (A - B) / (1.0 - B * B);
        for (int i = 0; i < 500; ++i) {
            const Cx w = Cx(center, 0.0) + rng.uniform_disk(2.5 * radius);
            const bool predicate = contains_with_margin(TargetRegion(disk), w).inside;
            const double disk_dist = radius - std::abs(w - Cx(center, 0.0));
            if (std::abs(disk_dist) < 1e-10) continue; // too close to call
            CHECK(predicate == (disk_dist > 0.0));
        }
    }
}

TEST_CASE("lemniscate containment is conjugation symmetric") {
    Rng rng(11);
    const TargetRegion lem = Lemniscate(0.7);
    for (int i = 0; i < 2000; ++i) {
        const Cx w = Cx(rng.uniform(-0.5, 2.0), rng.uniform(-1.5, 1.5));
        const auto a = contains_with_margin(lem, w);
        const auto b = contains_with_margin(lem, std::conj(w));
        CHECK(a.inside == b.inside);
        CHECK(a.margin == doctest::Approx(b.margin).epsilon(1e-13));
    }
}

TEST_CASE("is_convex_boundary") {
    // square with edge midpoints, counterclockwise
    const std::vector<Cx> square{Cx(1, -1), Cx(1, 0),  Cx(1, 1),  Cx(0, 1),
                                 Cx(-1, 1), Cx(-1, 0), Cx(-1, -1), Cx(0, -1)};
    CHECK(lemni::is_convex_boundary(square));

    const std::vector<Cx> dart{Cx(1.0, 0.0), Cx(0.1, 0.1), Cx(0.0, 1.0), Cx(-1.0, -1.0)};
    CHECK(!lemni::is_convex_boundary(dart));

    for (double c = 0.05; c <= 1.0 + 1e-9; c += 0.05) {
        const double cc = std::min(c, 1.0);
        CHECK(lemni::is_convex_boundary(
            boundary_samples(TargetRegion(Lemniscate(cc)), 1024)));
    }
}

TEST_CASE("winding number and polygon margins") {
    std::vector<Cx> circle;
    for (int j = 0; j < 512; ++j) circle.push_back(std::polar(0.5, 2.0 * M_PI * j / 512.0));
    BoundaryPolygonRegion disk{circle, Cx(0.0, 0.0)};

    CHECK(lemni::winding_number(circle, Cx(0.0, 0.0)) == 1);
    CHECK(lemni::winding_number(circle, Cx(0.7, 0.0)) == 0);

    const auto in = contains_with_margin(TargetRegion(disk), Cx(0.3, 0.0));
    CHECK(in.inside);
    CHECK(in.margin == doctest::Approx(0.2).epsilon(1e-3));

    const auto outpt = contains_with_margin(TargetRegion(disk), Cx(0.6, 0.0));
    CHECK(!outpt.inside);
    CHECK(outpt.margin == doctest::Approx(-0.1).epsilon(1e-3));
}

TEST_CASE("region_from_univalent_boundary accepts univalent maps") {
    const AnalyticMap id = AnalyticMap::identity();
    const auto disk = lemni::region_from_univalent_boundary(id, 0.5, 512);
    CHECK(disk.base == Cx(0.0, 0.0));
    CHECK(contains_with_margin(TargetRegion(disk), Cx(0.3, 0.0)).inside);
    CHECK(!contains_with_margin(TargetRegion(disk), Cx(0.6, 0.0)).inside);

    CHECK_THROWS_AS((void)lemni::region_from_univalent_boundary(id, 0.5, 100),
                    lemni::InvalidParams);
    CHECK_THROWS_AS((void)lemni::region_from_univalent_boundary(id, 1.0, 512),
                    lemni::InvalidParams);
}

TEST_CASE("region_from_univalent_boundary rejects a doubly-traversed boundary") {
    const AnalyticMap z = AnalyticMap::identity();
    const AnalyticMap z2 = z * z;
    CHECK_THROWS_WITH_AS((void)lemni::region_from_univalent_boundary(z2, 0.5, 512),
                         doctest::Contains("SelfIntersectingBoundary"), lemni::InvalidParams);
}

TEST_CASE("region_from_univalent_boundary rejects crossing boundaries") {
    // z + 1.2 z^2 is not univalent on |z| <= 0.9 (derivative vanishes inside);
    // its boundary image develops a loop.
    const AnalyticMap z = AnalyticMap::identity();
    const AnalyticMap g = z + AnalyticMap::constant(1.2) * z * z;
    CHECK_THROWS_AS((void)lemni::region_from_univalent_boundary(g, 0.9, 512),
                    lemni::InvalidParams);
}

TEST_CASE("boundary CSV shape and first row") {
    const auto pts = boundary_samples(TargetRegion(Lemniscate(0.5)), 1024);
    std::ostringstream csv;
    lemni::write_boundary_csv(csv, pts);
    std::istringstream lines(csv.str());
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == "theta,re,im");
    double theta = -1, re = 0, im = 1;
    CHECK(std::sscanf(first.c_str(), "%lf,%lf,%lf", &theta, &re, &im) == 3);
    CHECK(theta == 0.0);
    CHECK(re == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
    CHECK(im == 0.0);
}

TEST_CASE("boundary SVG smoke") {
    const auto pts = boundary_samples(TargetRegion(JanowskiDisk(1.0, 0.0)), 128);
    std::ostringstream svg;
    lemni::write_boundary_svg(svg, pts);
    const std::string s = svg.str();
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find("viewBox") != std::string::npos);
    CHECK(s.find("<polyline") != std::string::npos);
    CHECK(s.find("stroke-width") != std::string::npos);
}

TEST_CASE("polygon boundary_samples returns the stored vertices") {
    std::vector<Cx> tri;
    for (int j = 0; j < 32; ++j) tri.push_back(std::polar(1.0, 2.0 * M_PI * j / 32.0));
    BoundaryPolygonRegion region{tri, Cx(0.0, 0.0)};
    CHECK(boundary_samples(TargetRegion(region), 64) == tri);
}
