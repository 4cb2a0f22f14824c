#include "isv/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isv {

namespace {

constexpr int kBisectionSteps = 4;

// Ray / axis-aligned box slab test. Returns false when the ray misses.
bool intersect_box(const Vec3& o, const Vec3& d, const Vec3& lo, const Vec3& hi, double& t_near, double& t_far)
{
    t_near = -std::numeric_limits<double>::infinity();
    t_far = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
        if (d[a] == 0.0) {
            if (o[a] < lo[a] || o[a] > hi[a]) {
                return false;
            }
            continue;
        }
        const double inv = 1.0 / d[a];
        double t0 = (lo[a] - o[a]) * inv;
        double t1 = (hi[a] - o[a]) * inv;
        if (t0 > t1) {
            std::swap(t0, t1);
        }
        t_near = std::max(t_near, t0);
        t_far = std::min(t_far, t1);
    }
    return t_near <= t_far;
}

float encode_depth(double distance, double near, double far)
{
    const double d = std::clamp((distance - near) / (far - near), 0.0, 1.0);
    const float f = static_cast<float>(d);
    return f >= 1.0f ? std::nextafter(1.0f, 0.0f) : f;
}

} // namespace

void Camera::validate() const
{
    if (width == 0 || height == 0) {
        throw std::invalid_argument("camera image size must be positive");
    }
    if (!(near > 0.0) || !(far > near)) {
        throw std::invalid_argument("camera requires far > near > 0");
    }
    if (!(vertical_fov > 0.0) || !(vertical_fov < 3.14159)) {
        throw std::invalid_argument("camera field of view must lie in (0, pi)");
    }
    if (std::abs(norm(orientation) - 1.0) > 1e-9) {
        throw std::invalid_argument("camera orientation must be a unit quaternion");
    }
}

Vec3 Camera::ray_direction(std::size_t px, std::size_t py) const
{
    const double tan_half = std::tan(0.5 * vertical_fov);
    const double aspect = static_cast<double>(width) / static_cast<double>(height);
    const double x = (2.0 * (static_cast<double>(px) + 0.5) / static_cast<double>(width) - 1.0) * tan_half * aspect;
    const double y = (1.0 - 2.0 * (static_cast<double>(py) + 0.5) / static_cast<double>(height)) * tan_half;
    return rotate(orientation, normalized(Vec3{x, y, -1.0}));
}

Camera fit_camera(const Vec3& position, const Quaternion& orientation, const ScalarVolume& vol,
                  const ImageSettings& image)
{
    Camera cam;
    cam.position = position;
    cam.orientation = orientation;
    cam.vertical_fov = image.vertical_fov;
    cam.width = image.width;
    cam.height = image.height;
    const double dist = norm(position - vol.center());
    const double r = vol.bounding_radius();
    cam.far = dist + r;
    cam.near = std::max(dist - r, 1e-3 * cam.far);
    return cam;
}

RenderSpec make_render_spec(std::vector<double> isovalues, const ColorMap& map, double value_min,
                            double value_max)
{
    RenderSpec spec;
    spec.isovalues = std::move(isovalues);
    const double span = value_max - value_min;
    for (const double iso : spec.isovalues) {
        const double t = span > 0.0 ? (iso - value_min) / span : 0.5;
        spec.colors.push_back(map.sample(t));
    }
    return spec;
}

std::vector<double> default_isovalues(double value_min, double value_max)
{
    const double span = value_max - value_min;
    return {value_min + 0.25 * span, value_min + 0.5 * span, value_min + 0.75 * span};
}

IsosurfaceRenderer::IsosurfaceRenderer(const ScalarVolume& vol, RenderSpec spec)
    : vol_(vol), spec_(std::move(spec))
{
    if (spec_.colors.size() != spec_.isovalues.size()) {
        throw std::invalid_argument("render spec needs one colour per isovalue");
    }
    step_ = spec_.step > 0.0 ? spec_.step : 0.5 * vol_.min_spacing();

    const Dims& d = vol_.dims();
    for (int a = 0; a < 3; ++a) {
        blocks_[a] = (d[a] - 1 + block_ - 1) / block_;
    }
    active_.assign(blocks_[0] * blocks_[1] * blocks_[2], 0);
    for (std::size_t bk = 0; bk < blocks_[2]; ++bk) {
        for (std::size_t bj = 0; bj < blocks_[1]; ++bj) {
            for (std::size_t bi = 0; bi < blocks_[0]; ++bi) {
                double lo = std::numeric_limits<double>::infinity();
                double hi = -lo;
                for (std::size_t k = bk * block_; k <= std::min((bk + 1) * block_, d[2] - 1); ++k) {
                    for (std::size_t j = bj * block_; j <= std::min((bj + 1) * block_, d[1] - 1); ++j) {
                        for (std::size_t i = bi * block_; i <= std::min((bi + 1) * block_, d[0] - 1); ++i) {
                            const double v = vol_.at(i, j, k);
                            lo = std::min(lo, v);
                            hi = std::max(hi, v);
                        }
                    }
                }
                const bool any = std::any_of(spec_.isovalues.begin(), spec_.isovalues.end(),
                                             [&](double iso) { return iso >= lo && iso <= hi; });
                active_[bi + blocks_[0] * (bj + blocks_[1] * bk)] = any ? 1 : 0;
            }
        }
    }

    // Two-pass 26-neighbour chamfer; exact for the chessboard metric.
    const std::uint32_t far_away = static_cast<std::uint32_t>(blocks_[0] + blocks_[1] + blocks_[2]);
    dist_.resize(active_.size());
    for (std::size_t i = 0; i < active_.size(); ++i) {
        dist_[i] = active_[i] ? 0 : far_away;
    }
    const auto nb = [&](long x, long y, long z) -> long {
        if (x < 0 || y < 0 || z < 0 || x >= static_cast<long>(blocks_[0]) || y >= static_cast<long>(blocks_[1]) ||
            z >= static_cast<long>(blocks_[2])) {
            return -1;
        }
        return x + static_cast<long>(blocks_[0]) * (y + static_cast<long>(blocks_[1]) * z);
    };
    for (int pass = 0; pass < 2; ++pass) {
        const long sign = pass == 0 ? -1 : 1;
        const long n = static_cast<long>(dist_.size());
        for (long r = 0; r < n; ++r) {
            const long idx = pass == 0 ? r : n - 1 - r;
            const long x = idx % static_cast<long>(blocks_[0]);
            const long y = (idx / static_cast<long>(blocks_[0])) % static_cast<long>(blocks_[1]);
            const long z = idx / static_cast<long>(blocks_[0] * blocks_[1]);
            for (long dz = -1; dz <= 1; ++dz) {
                for (long dy = -1; dy <= 1; ++dy) {
                    for (long dx = -1; dx <= 1; ++dx) {
                        // Only neighbours already visited in this pass's raster order.
                        const long off = dx + static_cast<long>(blocks_[0]) * (dy + static_cast<long>(blocks_[1]) * dz);
                        if (off * sign <= 0) {
                            continue;
                        }
                        const long j = nb(x + dx, y + dy, z + dz);
                        if (j >= 0) {
                            dist_[idx] = std::min(dist_[idx], dist_[j] + 1);
                        }
                    }
                }
            }
        }
    }
}

Vec3 IsosurfaceRenderer::to_index(const Vec3& p) const
{
    const Vec3& o = vol_.origin();
    const Vec3& s = vol_.spacing();
    return {(p.x - o.x) / s.x, (p.y - o.y) / s.y, (p.z - o.z) / s.z};
}

double IsosurfaceRenderer::sample_index(const Vec3& u) const { return sample_trilinear_index(vol_, u.x, u.y, u.z); }

bool IsosurfaceRenderer::segment_active(const Vec3& ua, const Vec3& ub) const
{
    std::size_t lo[3];
    std::size_t hi[3];
    const Dims& d = vol_.dims();
    for (int a = 0; a < 3; ++a) {
        const double top = static_cast<double>(d[a] - 1);
        const double u0 = std::clamp(std::min(ua[a], ub[a]), 0.0, top);
        const double u1 = std::clamp(std::max(ua[a], ub[a]), 0.0, top);
        const double b = static_cast<double>(block_);
        lo[a] = std::min(static_cast<std::size_t>(u0 / b), blocks_[a] - 1);
        hi[a] = std::min(static_cast<std::size_t>(u1 / b), blocks_[a] - 1);
    }
    for (std::size_t k = lo[2]; k <= hi[2]; ++k) {
        for (std::size_t j = lo[1]; j <= hi[1]; ++j) {
            for (std::size_t i = lo[0]; i <= hi[0]; ++i) {
                if (active_[i + blocks_[0] * (j + blocks_[1] * k)]) {
                    return true;
                }
            }
        }
    }
    return false;
}

double IsosurfaceRenderer::block_exit(const Vec3& ua, const Vec3& du) const
{
    const Dims& d = vol_.dims();
    const double b = static_cast<double>(block_);
    double t_exit = std::numeric_limits<double>::infinity();
    std::size_t cell[3];
    for (int a = 0; a < 3; ++a) {
        const double top = static_cast<double>(d[a] - 1);
        const double u = std::clamp(ua[a], 0.0, top);
        cell[a] = std::min(static_cast<std::size_t>(u / b), blocks_[a] - 1);
    }
    const double r = static_cast<double>(dist_[cell[0] + blocks_[0] * (cell[1] + blocks_[1] * cell[2])]);
    for (int a = 0; a < 3; ++a) {
        if (du[a] == 0.0) {
            continue;
        }
        const double c = static_cast<double>(cell[a]);
        const double face = du[a] > 0.0 ? (c + r) * b : (c - r + 1.0) * b;
        t_exit = std::min(t_exit, (face - ua[a]) / du[a]);
    }
    return t_exit;
}

bool IsosurfaceRenderer::march(const Vec3& origin, const Vec3& dir, double t_begin, double t_end, bool skip,
                               Hit& hit) const
{
    const auto n_steps = static_cast<std::size_t>(std::max(1.0, std::ceil((t_end - t_begin) / step_)));
    auto t_at = [&](std::size_t k) { return k >= n_steps ? t_end : t_begin + static_cast<double>(k) * step_; };
    auto u_at = [&](double t) { return to_index(origin + dir * t); };
    const auto& isos = spec_.isovalues;
    const Vec3 du = to_index(origin + dir) - to_index(origin);

    Vec3 ua = u_at(t_begin);
    double fa = 0.0;
    bool have_fa = false;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double ta = t_at(k);
        const double tb = t_at(k + 1);
        const Vec3 ub = u_at(tb);
        if (skip && !segment_active(ua, ub)) {
            // Every step ending at least one step short of the macrocell exit stays inside
            // the inactive cell; jump over them. Landing on t_at(k) keeps samples identical.
            const double steps_left = (ta + block_exit(ua, du) - t_begin) / step_ - 1.0;
            std::size_t next = k + 1;
            if (steps_left > static_cast<double>(k + 2)) {
                next = std::min(static_cast<std::size_t>(steps_left), n_steps);
            }
            if (next == k + 1) {
                ua = ub;
            } else if (next < n_steps) {
                ua = u_at(t_at(next));
            }
            k = next - 1;
            have_fa = false;
            continue;
        }
        if (!have_fa) {
            fa = sample_index(ua);
        }
        const double fb = sample_index(ub);

        bool found = false;
        for (std::size_t i = 0; i < isos.size(); ++i) {
            const double iso = isos[i];
            const bool below_a = fa < iso;
            if (below_a == (fb < iso)) {
                continue;
            }
            double lo = ta;
            double hi = tb;
            for (int s = 0; s < kBisectionSteps; ++s) {
                const double mid = 0.5 * (lo + hi);
                if ((sample_index(u_at(mid)) < iso) == below_a) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double t_hit = 0.5 * (lo + hi);
            if (!found || t_hit < hit.t) {
                hit = {t_hit, i};
                found = true;
            }
        }
        if (found) {
            return true;
        }
        fa = fb;
        have_fa = true;
        ua = ub;
    }
    return false;
}

FrameBuffer IsosurfaceRenderer::render_impl(const Camera& cam, bool skip) const
{
    cam.validate();
    FrameBuffer fb(cam.width, cam.height, spec_.background);
    if (spec_.isovalues.empty()) {
        return fb;
    }
    const Vec3 lo = vol_.bounds_min();
    const Vec3 hi = vol_.bounds_max();
    for (std::size_t py = 0; py < cam.height; ++py) {
        for (std::size_t px = 0; px < cam.width; ++px) {
            const Vec3 dir = cam.ray_direction(px, py);
            double t0 = 0.0;
            double t1 = 0.0;
            if (!intersect_box(cam.position, dir, lo, hi, t0, t1) || t1 < 0.0) {
                continue;
            }
            t0 = std::max(t0, 0.0);
            Hit hit{};
            if (!march(cam.position, dir, t0, t1, skip, hit)) {
                continue;
            }
            const Vec3 p = cam.position + dir * hit.t;
            const Vec3 n = gradient(vol_, p);
            const double n_len = norm(n);
            const double lambert = n_len > 0.0 ? std::abs(dot(n, dir)) / n_len : 1.0;
            const double shade = spec_.ambient + spec_.diffuse * lambert;
            const ColorF& base = spec_.colors[hit.iso];
            const std::size_t idx = py * cam.width + px;
            fb.set_rgb(idx, to_rgb8({base[0] * shade, base[1] * shade, base[2] * shade}));
            fb.depth()[idx] = encode_depth(hit.t, cam.near, cam.far);
        }
    }
    return fb;
}

FrameBuffer IsosurfaceRenderer::render(const Camera& cam) const { return render_impl(cam, true); }

FrameBuffer render_isosurfaces(const ScalarVolume& vol, const Camera& cam, const RenderSpec& spec)
{
    return IsosurfaceRenderer(vol, spec).render(cam);
}

FrameBuffer render_isosurfaces_reference(const ScalarVolume& vol, const Camera& cam, const RenderSpec& spec)
{
    return IsosurfaceRenderer(vol, spec).render_impl(cam, false);
}

} // namespace isv
