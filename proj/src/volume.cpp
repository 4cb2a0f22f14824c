#include "isv/volume.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isv {

ScalarVolume::ScalarVolume(Dims dims, Vec3 spacing, Vec3 origin, std::vector<double> values)
    : dims_(dims), spacing_(spacing), origin_(origin), values_(std::move(values))
{
    for (int a = 0; a < 3; ++a) {
        if (dims_[a] < 2) {
            throw std::invalid_argument("volume dimension " + std::to_string(a) + " must be at least 2");
        }
        if (!(spacing_[a] > 0.0)) {
            throw std::invalid_argument("volume spacing must be positive");
        }
    }
    if (values_.size() != dims_[0] * dims_[1] * dims_[2]) {
        throw std::invalid_argument("volume has " + std::to_string(values_.size()) + " values, expected " +
                                    std::to_string(dims_[0] * dims_[1] * dims_[2]));
    }
}

ScalarVolume::ScalarVolume(Dims dims, Vec3 spacing, Vec3 origin)
    : ScalarVolume(dims, spacing, origin, std::vector<double>(dims[0] * dims[1] * dims[2], 0.0))
{
}

Vec3 ScalarVolume::node_position(std::size_t i, std::size_t j, std::size_t k) const
{
    return {origin_.x + spacing_.x * static_cast<double>(i), origin_.y + spacing_.y * static_cast<double>(j),
            origin_.z + spacing_.z * static_cast<double>(k)};
}

Vec3 ScalarVolume::bounds_max() const { return node_position(dims_[0] - 1, dims_[1] - 1, dims_[2] - 1); }

bool ScalarVolume::contains(const Vec3& p) const
{
    const Vec3 lo = bounds_min();
    const Vec3 hi = bounds_max();
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
}

double ScalarVolume::min_spacing() const { return std::min({spacing_.x, spacing_.y, spacing_.z}); }

std::array<double, 2> ScalarVolume::value_range() const
{
    const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    return {*lo, *hi};
}

double sample_trilinear_index(const ScalarVolume& vol, double u, double v, double w)
{
    const Dims& d = vol.dims();
    u = std::clamp(u, 0.0, static_cast<double>(d[0] - 1));
    v = std::clamp(v, 0.0, static_cast<double>(d[1] - 1));
    w = std::clamp(w, 0.0, static_cast<double>(d[2] - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(u), d[0] - 2);
    const std::size_t j = std::min(static_cast<std::size_t>(v), d[1] - 2);
    const std::size_t k = std::min(static_cast<std::size_t>(w), d[2] - 2);
    const double fx = u - static_cast<double>(i);
    const double fy = v - static_cast<double>(j);
    const double fz = w - static_cast<double>(k);

    const double* base = vol.values().data() + vol.index(i, j, k);
    const std::size_t sy = d[0];
    const std::size_t sz = d[0] * d[1];
    const double c000 = base[0], c100 = base[1];
    const double c010 = base[sy], c110 = base[sy + 1];
    const double c001 = base[sz], c101 = base[sz + 1];
    const double c011 = base[sz + sy], c111 = base[sz + sy + 1];

    const double c00 = c000 + (c100 - c000) * fx;
    const double c10 = c010 + (c110 - c010) * fx;
    const double c01 = c001 + (c101 - c001) * fx;
    const double c11 = c011 + (c111 - c011) * fx;
    const double c0 = c00 + (c10 - c00) * fy;
    const double c1 = c01 + (c11 - c01) * fy;
    return c0 + (c1 - c0) * fz;
}

double sample_trilinear(const ScalarVolume& vol, const Vec3& p)
{
    if (!vol.contains(p)) {
        throw std::out_of_range("sample point outside volume bounds");
    }
    const Vec3 o = vol.origin();
    const Vec3 s = vol.spacing();
    return sample_trilinear_index(vol, (p.x - o.x) / s.x, (p.y - o.y) / s.y, (p.z - o.z) / s.z);
}

Vec3 gradient(const ScalarVolume& vol, const Vec3& p)
{
    const Vec3 lo = vol.bounds_min();
    const Vec3 hi = vol.bounds_max();
    const Vec3 o = vol.origin();
    const Vec3 s = vol.spacing();
    auto f = [&](double x, double y, double z) {
        return sample_trilinear_index(vol, (x - o.x) / s.x, (y - o.y) / s.y, (z - o.z) / s.z);
    };
    double g[3];
    for (int a = 0; a < 3; ++a) {
        const double h = 0.5 * s[a];
        const double c = p[a];
        const double plus = std::min(c + h, hi[a]);
        const double minus = std::max(c - h, lo[a]);
        const double span = plus - minus;
        if (!(span > 0.0)) {
            g[a] = 0.0;
            continue;
        }
        double xp[3] = {p.x, p.y, p.z};
        double xm[3] = {p.x, p.y, p.z};
        xp[a] = plus;
        xm[a] = minus;
        g[a] = (f(xp[0], xp[1], xp[2]) - f(xm[0], xm[1], xm[2])) / span;
    }
    return {g[0], g[1], g[2]};
}

} // namespace isv
