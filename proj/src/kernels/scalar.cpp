#include "isv/kernels.hpp"

#include <cassert>
#include <cmath>

namespace isv::kernels::scalar {

void depth_bins(std::span<const float> depth, std::span<std::uint16_t> bins)
{
    assert(bins.size() == depth.size());
    for (std::size_t i = 0; i < depth.size(); ++i) {
        const float d = depth[i];
        if (d == 1.0f) {
            bins[i] = kBackgroundBin;
            continue;
        }
        const float scaled = std::floor(d * 256.0f);
        bins[i] = scaled >= 255.0f ? 255 : static_cast<std::uint16_t>(scaled);
    }
}

void relative_luminance(std::span<const std::uint8_t> rgb, std::span<double> y)
{
    assert(rgb.size() == 3 * y.size());
    const double* lut = detail::srgb_linear_table();
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = lut[rgb[3 * i]];
        const double g = lut[rgb[3 * i + 1]];
        const double b = lut[rgb[3 * i + 2]];
        const double lum = (r * detail::kLumR + g * detail::kLumG) + b * detail::kLumB;
        y[i] = lum / detail::kLumWhite;
    }
}

} // namespace isv::kernels::scalar
