#pragma once

#include "isv/quat.hpp"
#include "isv/vec3.hpp"

#include <cstddef>
#include <vector>

namespace isv {

inline constexpr Vec3 kDefaultUpHint{0.0, 0.0, 1.0};
inline constexpr Vec3 kFallbackUp{0.0, 1.0, 0.0};

/// Canonical camera frame: looks down -z with +y up.
inline constexpr Vec3 kCameraForward{0.0, 0.0, -1.0};
inline constexpr Vec3 kCameraUp{0.0, 1.0, 0.0};

struct Viewpoint {
    std::size_t lat_idx = 0;
    std::size_t lon_idx = 0;
    Vec3 position;
    Quaternion orientation;
};

/// Candidate camera positions on a latitude x longitude sphere around the data.
/// Polar angles are pi (i + 1) / (n_lat + 1), so the poles are never used;
/// azimuths are 2 pi j / n_lon. Viewpoints are stored latitude-major.
class ViewpointGrid {
public:
    /// Throws std::invalid_argument for zero counts or a non-positive radius.
    ViewpointGrid(std::size_t n_lat, std::size_t n_lon, double radius, const Vec3& center);

    std::size_t n_lat() const { return n_lat_; }
    std::size_t n_lon() const { return n_lon_; }
    double radius() const { return radius_; }
    const Vec3& center() const { return center_; }

    std::size_t size() const { return viewpoints_.size(); }
    const std::vector<Viewpoint>& viewpoints() const { return viewpoints_; }
    const Viewpoint& operator[](std::size_t i) const { return viewpoints_[i]; }
    const Viewpoint& at(std::size_t lat, std::size_t lon) const { return viewpoints_[index_of(lat, lon)]; }
    std::size_t index_of(std::size_t lat, std::size_t lon) const { return lat * n_lon_ + lon; }

    /// Camera position on this sphere for a camera oriented by q and aimed at the center.
    Vec3 position_for(const Quaternion& q) const;

private:
    std::size_t n_lat_;
    std::size_t n_lon_;
    double radius_;
    Vec3 center_;
    std::vector<Viewpoint> viewpoints_;
};

ViewpointGrid build_grid(std::size_t n_lat, std::size_t n_lon, double radius, const Vec3& center);

/// Unit quaternion that turns the canonical camera frame so that its forward axis
/// aims from position at center. Up is up_hint projected orthogonal to forward;
/// when forward is (nearly) parallel to up_hint, kFallbackUp is used instead.
Quaternion look_at(const Vec3& position, const Vec3& center, const Vec3& up_hint = kDefaultUpHint);

/// Great-circle distance on a sphere of the given radius and center.
double geodesic(const Vec3& p1, const Vec3& p2, const Vec3& center, double radius);
double geodesic(const Viewpoint& v1, const Viewpoint& v2, const ViewpointGrid& grid);

} // namespace isv
