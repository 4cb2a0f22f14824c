#pragma once

#include "isv/framebuffer.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace isv {

inline constexpr std::size_t kHistogramBins = 256;
/// Entropy of a uniform 256-bin distribution, the largest possible score.
inline constexpr double kMaxEntropyBits = 8.0;

struct Histogram256 {
    std::array<std::uint64_t, kHistogramBins> bins{};
    std::uint64_t total = 0;

    void add(std::size_t bin, std::uint64_t count = 1)
    {
        bins[bin] += count;
        total += count;
    }
    bool operator==(const Histogram256&) const = default;
};

enum class EntropySource { Depth, Lightness, DepthAndLightness };

std::string_view to_string(EntropySource s);
/// Accepts "depth", "lightness" and "both" (also "depth&lightness").
std::optional<EntropySource> parse_entropy_source(std::string_view s);

/// CIE L* in [0, 100] of an 8-bit sRGB colour (D65 white).
double rgb_to_lightness(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// L* from relative luminance Y / Yn.
double lightness_from_luminance(double y);

/// min(floor(L / 100 * 256), 255), L clamped to [0, 100].
std::size_t lightness_bin(double lightness);

/// Histogram of non-background depths, bin = min(floor(d * 256), 255).
Histogram256 depth_histogram(const FrameBuffer& fb);

/// Histogram of non-background pixel lightness.
Histogram256 lightness_histogram(const FrameBuffer& fb);

/// Shannon entropy in bits; 0 for an empty histogram.
double shannon(const Histogram256& h);

/// Depth and Lightness give raw entropy in bits; DepthAndLightness gives the mean
/// of the two entropies, each divided by 8, so it lies in [0, 1].
double viewpoint_score(const FrameBuffer& fb, EntropySource source);

} // namespace isv
