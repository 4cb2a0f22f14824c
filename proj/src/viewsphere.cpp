#include "isv/viewsphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isv {

namespace {

// |forward x up_hint| below this switches to the fallback up axis.
constexpr double kParallelEps = 1e-6;

// Rotation matrix (columns c0, c1, c2) to quaternion, Shepperd's method.
Quaternion from_basis(const Vec3& c0, const Vec3& c1, const Vec3& c2)
{
    const double m00 = c0.x, m10 = c0.y, m20 = c0.z;
    const double m01 = c1.x, m11 = c1.y, m21 = c1.z;
    const double m02 = c2.x, m12 = c2.y, m22 = c2.z;
    const double trace = m00 + m11 + m22;
    Quaternion q;
    if (trace > 0.0) {
        const double s = 2.0 * std::sqrt(trace + 1.0);
        q = {0.25 * s, (m21 - m12) / s, (m02 - m20) / s, (m10 - m01) / s};
    } else if (m00 > m11 && m00 > m22) {
        const double s = 2.0 * std::sqrt(1.0 + m00 - m11 - m22);
        q = {(m21 - m12) / s, 0.25 * s, (m01 + m10) / s, (m02 + m20) / s};
    } else if (m11 > m22) {
        const double s = 2.0 * std::sqrt(1.0 + m11 - m00 - m22);
        q = {(m02 - m20) / s, (m01 + m10) / s, 0.25 * s, (m12 + m21) / s};
    } else {
        const double s = 2.0 * std::sqrt(1.0 + m22 - m00 - m11);
        q = {(m10 - m01) / s, (m02 + m20) / s, (m12 + m21) / s, 0.25 * s};
    }
    return normalize(q);
}

} // namespace

ViewpointGrid::ViewpointGrid(std::size_t n_lat, std::size_t n_lon, double radius, const Vec3& center)
    : n_lat_(n_lat), n_lon_(n_lon), radius_(radius), center_(center)
{
    if (n_lat == 0 || n_lon == 0) {
        throw std::invalid_argument("viewpoint grid needs at least one latitude and one longitude");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("viewpoint sphere radius must be positive");
    }
    viewpoints_.reserve(n_lat * n_lon);
    for (std::size_t i = 0; i < n_lat; ++i) {
        const double theta = std::numbers::pi * static_cast<double>(i + 1) / static_cast<double>(n_lat + 1);
        for (std::size_t j = 0; j < n_lon; ++j) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_lon);
            const Vec3 dir{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
            Viewpoint vp;
            vp.lat_idx = i;
            vp.lon_idx = j;
            vp.position = center + dir * radius;
            vp.orientation = look_at(vp.position, center);
            viewpoints_.push_back(vp);
        }
    }
}

Vec3 ViewpointGrid::position_for(const Quaternion& q) const
{
    return center_ - rotate(q, kCameraForward) * radius_;
}

ViewpointGrid build_grid(std::size_t n_lat, std::size_t n_lon, double radius, const Vec3& center)
{
    return ViewpointGrid(n_lat, n_lon, radius, center);
}

Quaternion look_at(const Vec3& position, const Vec3& center, const Vec3& up_hint)
{
    const Vec3 offset = center - position;
    const double len = norm(offset);
    if (!(len > 0.0)) {
        throw std::invalid_argument("look_at: position coincides with center");
    }
    const Vec3 forward = offset / len;
    Vec3 right = cross(forward, up_hint);
    if (norm(right) < kParallelEps * norm(up_hint)) {
        right = cross(forward, kFallbackUp);
    }
    right = normalized(right);
    const Vec3 up = cross(right, forward);
    // Camera axes: +x -> right, +y -> up, +z -> -forward.
    return from_basis(right, up, -forward);
}

double geodesic(const Vec3& p1, const Vec3& p2, const Vec3& center, double radius)
{
    const Vec3 a = p1 - center;
    const Vec3 b = p2 - center;
    if (a == b) {
        return 0.0;
    }
    return radius * angle_between(a, b);
}

double geodesic(const Viewpoint& v1, const Viewpoint& v2, const ViewpointGrid& grid)
{
    return geodesic(v1.position, v2.position, grid.center(), grid.radius());
}

} // namespace isv
