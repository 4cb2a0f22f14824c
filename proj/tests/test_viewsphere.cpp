#include "isv/viewsphere.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace isv;

TEST(ViewpointGrid, SizeAndOrdering)
{
    const ViewpointGrid g = build_grid(3, 6, 2.0, {});
    ASSERT_EQ(g.size(), 18u);
    EXPECT_EQ(g[7].lat_idx, 1u);
    EXPECT_EQ(g[7].lon_idx, 1u);
    EXPECT_EQ(g.index_of(2, 5), 17u);
}

TEST(ViewpointGrid, RejectsBadArguments)
{
    EXPECT_THROW(build_grid(0, 4, 1.0, {}), std::invalid_argument);
    EXPECT_THROW(build_grid(4, 0, 1.0, {}), std::invalid_argument);
    EXPECT_THROW(build_grid(4, 4, 0.0, {}), std::invalid_argument);
}

TEST(ViewpointGrid, PositionsOnSphereAvoidingPoles)
{
    const Vec3 c{0.5, -1.0, 2.0};
    const ViewpointGrid g = build_grid(5, 8, 3.0, c);
    for (const Viewpoint& v : g.viewpoints()) {
        const Vec3 d = v.position - c;
        EXPECT_NEAR(norm(d), 3.0, 1e-12);
        EXPECT_LT(std::abs(d.z), 3.0 * std::cos(std::numbers::pi / 6) + 1e-12);
    }
}

TEST(ViewpointGrid, EqualAngleSpacing)
{
    const std::size_t n_lat = 4, n_lon = 8;
    const ViewpointGrid g = build_grid(n_lat, n_lon, 1.0, {});
    for (std::size_t i = 0; i < n_lat; ++i) {
        const double theta = std::numbers::pi * static_cast<double>(i + 1) / static_cast<double>(n_lat + 1);
        for (std::size_t j = 0; j < n_lon; ++j) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_lon);
            const Vec3 p = g.at(i, j).position;
            EXPECT_NEAR(p.x, std::sin(theta) * std::cos(phi), 1e-12);
            EXPECT_NEAR(p.y, std::sin(theta) * std::sin(phi), 1e-12);
            EXPECT_NEAR(p.z, std::cos(theta), 1e-12);
        }
    }
}

TEST(ViewpointGrid, EveryViewpointLooksAtCenter)
{
    const Vec3 c{1.0, 2.0, 3.0};
    const ViewpointGrid g = build_grid(7, 12, 4.0, c);
    for (const Viewpoint& v : g.viewpoints()) {
        EXPECT_NEAR(norm(v.orientation), 1.0, 1e-12);
        const Vec3 fwd = rotate(v.orientation, kCameraForward);
        const Vec3 want = normalized(c - v.position);
        EXPECT_NEAR(dot(fwd, want), 1.0, 1e-12);
        const Vec3 p = g.position_for(v.orientation);
        EXPECT_NEAR(norm(p - v.position), 0.0, 1e-12);
    }
}

TEST(LookAt, UpVectorFollowsHint)
{
    const Quaternion q = look_at({3, 0, 0}, {0, 0, 0});
    const Vec3 up = rotate(q, kCameraUp);
    EXPECT_NEAR(up.z, 1.0, 1e-12);
    const Vec3 right = rotate(q, Vec3{1, 0, 0});
    EXPECT_NEAR(right.y, 1.0, 1e-12);
}

TEST(LookAt, ParallelHintUsesFallback)
{
    const Quaternion q = look_at({0, 0, 5}, {0, 0, 0});
    EXPECT_NEAR(dot(rotate(q, kCameraForward), Vec3{0, 0, -1}), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(dot(rotate(q, kCameraUp), kFallbackUp)), 1.0, 1e-12);
}

TEST(LookAt, CoincidentPointsThrow)
{
    EXPECT_THROW(look_at({1, 1, 1}, {1, 1, 1}), std::invalid_argument);
}

TEST(Geodesic, KnownArcs)
{
    const Vec3 c{};
    EXPECT_EQ(geodesic(Vec3{2, 0, 0}, Vec3{2, 0, 0}, c, 2.0), 0.0);
    EXPECT_NEAR(geodesic(Vec3{2, 0, 0}, Vec3{0, 2, 0}, c, 2.0), std::numbers::pi, 1e-14);
    EXPECT_NEAR(geodesic(Vec3{2, 0, 0}, Vec3{-2, 0, 0}, c, 2.0), 2.0 * std::numbers::pi, 1e-14);
}

TEST(Geodesic, SymmetricAndTriangle)
{
    const ViewpointGrid g = build_grid(4, 9, 1.5, {0.1, 0.2, 0.3});
    for (std::size_t a = 0; a < g.size(); a += 5) {
        for (std::size_t b = 0; b < g.size(); b += 7) {
            EXPECT_DOUBLE_EQ(geodesic(g[a], g[b], g), geodesic(g[b], g[a], g));
            for (std::size_t m = 0; m < g.size(); m += 11) {
                EXPECT_LE(geodesic(g[a], g[b], g), geodesic(g[a], g[m], g) + geodesic(g[m], g[b], g) + 1e-12);
            }
        }
    }
}
