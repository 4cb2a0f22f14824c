#pragma once

// Per-pixel inner loops of the entropy scorer. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant. The variant in use
// is chosen once at runtime from CPUID; both produce bit-identical output.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace isv::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Best ISA supported by both the build and the running CPU.
Isa detected_isa();

/// ISA the dispatching entry points use: the override if one is set, else detected_isa().
Isa active_isa();

/// Forces (or with nullopt, clears) the ISA used by the dispatchers. Requests
/// for an unsupported ISA fall back to Scalar. Not thread-safe; for tests and benchmarks.
void set_isa_override(std::optional<Isa> isa);

/// Marks background pixels in depth_bins.
inline constexpr std::uint16_t kBackgroundBin = 256;

/// Bin index min(floor(d * 256), 255) per depth value, or kBackgroundBin for d == 1.
void depth_bins(std::span<const float> depth, std::span<std::uint16_t> bins);

/// CIE relative luminance Y / Yn in [0, 1] per interleaved sRGB pixel.
/// rgb.size() must be 3 * y.size().
void relative_luminance(std::span<const std::uint8_t> rgb, std::span<double> y);

/// Linear-light value of an 8-bit sRGB channel.
double srgb_to_linear(std::uint8_t c);

namespace scalar {
void depth_bins(std::span<const float> depth, std::span<std::uint16_t> bins);
void relative_luminance(std::span<const std::uint8_t> rgb, std::span<double> y);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define ISV_HAVE_AVX2_KERNELS 1
namespace avx2 {
void depth_bins(std::span<const float> depth, std::span<std::uint16_t> bins);
void relative_luminance(std::span<const std::uint8_t> rgb, std::span<double> y);
} // namespace avx2
#else
#define ISV_HAVE_AVX2_KERNELS 0
#endif

namespace detail {
// Shared by every variant so the arithmetic matches bit-for-bit.
inline constexpr double kLumR = 0.2126729;
inline constexpr double kLumG = 0.7151522;
inline constexpr double kLumB = 0.0721750;
// Evaluated in the same order as the per-pixel sum, so white maps to exactly 1.
inline const double kLumWhite = (kLumR + kLumG) + kLumB;
const double* srgb_linear_table();
} // namespace detail

} // namespace isv::kernels
