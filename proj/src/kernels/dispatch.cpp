#include "isv/kernels.hpp"

#include <array>
#include <cmath>

namespace isv::kernels {

namespace {

std::optional<Isa> g_override;

bool cpu_has_avx2()
{
#if ISV_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::array<double, 256> make_srgb_table()
{
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
        const double c = i / 255.0;
        t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    }
    return t;
}

} // namespace

namespace detail {
const double* srgb_linear_table()
{
    static const std::array<double, 256> table = make_srgb_table();
    return table.data();
}
} // namespace detail

double srgb_to_linear(std::uint8_t c) { return detail::srgb_linear_table()[c]; }

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

Isa detected_isa()
{
    static const Isa isa = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    return isa;
}

Isa active_isa()
{
    if (g_override) {
        return *g_override == Isa::Avx2 && detected_isa() != Isa::Avx2 ? Isa::Scalar : *g_override;
    }
    return detected_isa();
}

void set_isa_override(std::optional<Isa> isa) { g_override = isa; }

void depth_bins(std::span<const float> depth, std::span<std::uint16_t> bins)
{
#if ISV_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::Avx2) {
        return avx2::depth_bins(depth, bins);
    }
#endif
    scalar::depth_bins(depth, bins);
}

void relative_luminance(std::span<const std::uint8_t> rgb, std::span<double> y)
{
#if ISV_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::Avx2) {
        return avx2::relative_luminance(rgb, y);
    }
#endif
    scalar::relative_luminance(rgb, y);
}

} // namespace isv::kernels
