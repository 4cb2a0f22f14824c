#pragma once

#include "isv/vec3.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace isv {

using Dims = std::array<std::size_t, 3>;

/// Scalar field on a regular grid, x varies fastest.
class ScalarVolume {
public:
    ScalarVolume() = default;
    /// Throws std::invalid_argument when a dimension is < 2, a spacing is not
    /// positive, or values.size() does not match the dimensions.
    ScalarVolume(Dims dims, Vec3 spacing, Vec3 origin, std::vector<double> values);
    ScalarVolume(Dims dims, Vec3 spacing, Vec3 origin);

    const Dims& dims() const { return dims_; }
    const Vec3& spacing() const { return spacing_; }
    const Vec3& origin() const { return origin_; }
    std::size_t size() const { return values_.size(); }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return i + dims_[0] * (j + dims_[1] * k); }
    double at(std::size_t i, std::size_t j, std::size_t k) const { return values_[index(i, j, k)]; }
    double& at(std::size_t i, std::size_t j, std::size_t k) { return values_[index(i, j, k)]; }

    /// World position of grid node (i, j, k).
    Vec3 node_position(std::size_t i, std::size_t j, std::size_t k) const;

    Vec3 bounds_min() const { return origin_; }
    Vec3 bounds_max() const;
    Vec3 center() const { return (bounds_min() + bounds_max()) * 0.5; }
    /// Radius of the sphere through the corners of the bounding box.
    double bounding_radius() const { return norm(bounds_max() - bounds_min()) * 0.5; }
    bool contains(const Vec3& p) const;
    double min_spacing() const;

    /// (min, max) over all values.
    std::array<double, 2> value_range() const;

    bool operator==(const ScalarVolume&) const = default;

private:
    Dims dims_{};
    Vec3 spacing_{1.0, 1.0, 1.0};
    Vec3 origin_{};
    std::vector<double> values_;
};

/// Trilinear interpolation of the 8 surrounding nodes.
/// Throws std::out_of_range if p lies outside the grid bounds.
double sample_trilinear(const ScalarVolume& vol, const Vec3& p);

/// Same interpolation with p given in continuous index coordinates, clamped to the grid.
double sample_trilinear_index(const ScalarVolume& vol, double u, double v, double w);

/// Central differences of the trilinear field with half-cell steps; falls back to
/// one-sided differences where a step would leave the grid.
Vec3 gradient(const ScalarVolume& vol, const Vec3& p);

} // namespace isv
