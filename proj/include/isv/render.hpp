#pragma once

#include "isv/colormap.hpp"
#include "isv/framebuffer.hpp"
#include "isv/quat.hpp"
#include "isv/volume.hpp"

#include <cstddef>
#include <vector>

namespace isv {

/// Pinhole camera. The orientation maps the canonical frame (looking down -z,
/// +y up) into world space.
struct Camera {
    Vec3 position;
    Quaternion orientation;
    double vertical_fov = 0.872664626; // 50 degrees
    double near = 0.1;
    double far = 100.0;
    std::size_t width = 512;
    std::size_t height = 512;

    /// Throws std::invalid_argument when the invariants do not hold.
    void validate() const;

    /// Unit world-space direction through the centre of pixel (px, py); py = 0 is the top row.
    Vec3 ray_direction(std::size_t px, std::size_t py) const;
};

struct ImageSettings {
    std::size_t width = 512;
    std::size_t height = 512;
    double vertical_fov = 0.872664626;
};

/// Camera at position with the given orientation and near/far planes fitted
/// tightly around the volume's bounding sphere.
Camera fit_camera(const Vec3& position, const Quaternion& orientation, const ScalarVolume& vol,
                  const ImageSettings& image);

struct RenderSpec {
    std::vector<double> isovalues;
    std::vector<ColorF> colors; // one per isovalue
    double ambient = 0.3;
    double diffuse = 0.7;
    Rgb8 background{0, 0, 0};
    /// Ray-march step in world units; 0 selects half the smallest cell spacing.
    double step = 0.0;
};

/// Colours each isovalue from the map at its normalised position in [value_min, value_max].
RenderSpec make_render_spec(std::vector<double> isovalues, const ColorMap& map, double value_min,
                            double value_max);

/// Three isovalues at 25%, 50% and 75% of the given value range.
std::vector<double> default_isovalues(double value_min, double value_max);

/// Opaque multi-isosurface ray marcher. Rays are marched front to back at a fixed
/// step; a sign change of (f - iso) between consecutive samples is refined with
/// four bisection steps and the nearest hit over all isovalues is shaded with a
/// Lambertian headlight. Depth is (distance - near) / (far - near) in [0, 1);
/// misses keep the background colour and depth exactly 1.
///
/// Min/max macrocells let the marcher skip steps that cannot contain a crossing.
/// The skipped steps are exactly those the plain march would have found empty, so
/// output is bit-identical to render_isosurfaces_reference.
class IsosurfaceRenderer {
public:
    IsosurfaceRenderer(const ScalarVolume& vol, RenderSpec spec);

    FrameBuffer render(const Camera& cam) const;

    const RenderSpec& spec() const { return spec_; }
    const ScalarVolume& volume() const { return vol_; }

private:
    struct Hit {
        double t;
        std::size_t iso;
    };
    bool march(const Vec3& origin, const Vec3& dir, double t_begin, double t_end, bool skip, Hit& hit) const;
    bool segment_active(const Vec3& ua, const Vec3& ub) const;
    // Ray parameter at which the ray leaves the inactive cube of macrocells around ua.
    double block_exit(const Vec3& ua, const Vec3& du) const;
    Vec3 to_index(const Vec3& p) const;
    double sample_index(const Vec3& u) const;

    friend FrameBuffer render_isosurfaces_reference(const ScalarVolume&, const Camera&, const RenderSpec&);
    FrameBuffer render_impl(const Camera& cam, bool skip) const;

    const ScalarVolume& vol_;
    RenderSpec spec_;
    double step_;
    std::size_t block_ = 8;
    std::array<std::size_t, 3> blocks_{};
    std::vector<std::uint8_t> active_;
    // Chessboard distance, in macrocells, to the nearest active macrocell.
    std::vector<std::uint32_t> dist_;
};

FrameBuffer render_isosurfaces(const ScalarVolume& vol, const Camera& cam, const RenderSpec& spec);

/// Plain march over every step with no space skipping.
FrameBuffer render_isosurfaces_reference(const ScalarVolume& vol, const Camera& cam, const RenderSpec& spec);

} // namespace isv
