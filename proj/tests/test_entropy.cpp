#include "isv/entropy.hpp"
#include "isv/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace isv;

namespace {

// Direct sRGB -> CIE L* formula, no lookup tables.
double lightness_oracle(int r, int g, int b)
{
    auto lin = [](int c) {
        const double v = c / 255.0;
        return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
    };
    const double y = 0.2126729 * lin(r) + 0.7151522 * lin(g) + 0.0721750 * lin(b);
    const double yn = 0.2126729 + 0.7151522 + 0.0721750;
    const double t = y / yn;
    const double f = t > std::pow(6.0 / 29.0, 3) ? std::cbrt(t) : t / (3 * std::pow(6.0 / 29.0, 2)) + 4.0 / 29.0;
    return 116.0 * f - 16.0;
}

double entropy_oracle(const std::vector<double>& counts)
{
    double total = 0;
    for (double c : counts) total += c;
    double h = 0;
    for (double c : counts) {
        if (c > 0) h -= (c / total) * std::log(c / total) / std::log(2.0);
    }
    return h;
}

FrameBuffer random_framebuffer(std::mt19937_64& rng, std::size_t w, std::size_t h)
{
    FrameBuffer fb(w, h);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_real_distribution<float> depth(0.0f, 1.0f);
    std::bernoulli_distribution background(0.3);
    for (std::size_t i = 0; i < fb.pixel_count(); ++i) {
        fb.set_rgb(i, {static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                       static_cast<std::uint8_t>(byte(rng))});
        fb.depth()[i] = background(rng) ? 1.0f : depth(rng);
    }
    return fb;
}

struct IsaGuard {
    ~IsaGuard() { kernels::set_isa_override(std::nullopt); }
};

} // namespace

TEST(Shannon, ClosedForms)
{
    Histogram256 uniform;
    for (std::size_t b = 0; b < kHistogramBins; ++b) uniform.add(b, 3);
    EXPECT_NEAR(shannon(uniform), 8.0, 1e-9);

    Histogram256 single;
    single.add(17, 1000);
    EXPECT_NEAR(shannon(single), 0.0, 1e-9);

    Histogram256 two;
    two.add(0, 50);
    two.add(255, 50);
    EXPECT_NEAR(shannon(two), 1.0, 1e-9);

    EXPECT_EQ(shannon(Histogram256{}), 0.0);
}

TEST(Shannon, MatchesOracleOnRandomHistograms)
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> count(0, 40);
    for (int n = 0; n < 100; ++n) {
        Histogram256 h;
        std::vector<double> counts(kHistogramBins);
        for (std::size_t b = 0; b < kHistogramBins; ++b) {
            const int c = count(rng) > 30 ? count(rng) : 0;
            counts[b] = c;
            if (c) h.add(b, static_cast<std::uint64_t>(c));
        }
        if (h.total == 0) continue;
        const double e = shannon(h);
        EXPECT_NEAR(e, entropy_oracle(counts), 1e-12);
        EXPECT_GE(e, 0.0);
        EXPECT_LE(e, 8.0);
    }
}

TEST(Lightness, MatchesFormula)
{
    EXPECT_EQ(rgb_to_lightness(255, 255, 255), 100.0);
    EXPECT_EQ(rgb_to_lightness(0, 0, 0), 0.0);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int n = 0; n < 2000; ++n) {
        const int r = byte(rng), g = byte(rng), b = byte(rng);
        EXPECT_NEAR(rgb_to_lightness(r, g, b), lightness_oracle(r, g, b), 1e-9);
    }
}

TEST(Lightness, MidGrey)
{
    // sRGB 119 is the usual "L* = 50" grey.
    EXPECT_NEAR(rgb_to_lightness(119, 119, 119), 50.0, 0.1);
}

TEST(Lightness, Binning)
{
    EXPECT_EQ(lightness_bin(0.0), 0u);
    EXPECT_EQ(lightness_bin(100.0), 255u);
    EXPECT_EQ(lightness_bin(50.0), 128u);
    EXPECT_EQ(lightness_bin(-3.0), 0u);
    EXPECT_EQ(lightness_bin(0.390625), 1u);
    EXPECT_EQ(lightness_bin(0.39), 0u);
}

TEST(Histograms, BackgroundExcluded)
{
    FrameBuffer fb(4, 1, {255, 255, 255});
    fb.depth()[1] = 0.5f;
    fb.depth()[2] = 0.999f;
    const Histogram256 d = depth_histogram(fb);
    EXPECT_EQ(d.total, 2u);
    EXPECT_EQ(d.bins[128], 1u);
    EXPECT_EQ(d.bins[255], 1u);
    const Histogram256 l = lightness_histogram(fb);
    EXPECT_EQ(l.total, 2u);
    EXPECT_EQ(l.bins[255], 2u);
}

TEST(Histograms, AllBackgroundScoresZero)
{
    const FrameBuffer fb(8, 8, {200, 10, 10});
    EXPECT_EQ(viewpoint_score(fb, EntropySource::Depth), 0.0);
    EXPECT_EQ(viewpoint_score(fb, EntropySource::Lightness), 0.0);
    EXPECT_EQ(viewpoint_score(fb, EntropySource::DepthAndLightness), 0.0);
}

TEST(Histograms, MatchPerPixelOracle)
{
    std::mt19937_64 rng(100);
    for (int n = 0; n < 100; ++n) {
        const FrameBuffer fb = random_framebuffer(rng, 64, 64);
        Histogram256 d, l;
        for (std::size_t i = 0; i < fb.pixel_count(); ++i) {
            const float z = fb.depth()[i];
            if (z == 1.0f) continue;
            d.add(std::min<std::size_t>(static_cast<std::size_t>(std::floor(z * 256.0f)), 255));
            const Rgb8 c = fb.rgb_at(i);
            l.add(lightness_bin(rgb_to_lightness(c[0], c[1], c[2])));
        }
        EXPECT_EQ(depth_histogram(fb), d);
        EXPECT_EQ(lightness_histogram(fb), l);
    }
}

TEST(Score, CombinedIsMeanOfNormalized)
{
    std::mt19937_64 rng(4);
    const FrameBuffer fb = random_framebuffer(rng, 32, 32);
    const double hd = viewpoint_score(fb, EntropySource::Depth);
    const double hl = viewpoint_score(fb, EntropySource::Lightness);
    EXPECT_DOUBLE_EQ(viewpoint_score(fb, EntropySource::DepthAndLightness), (hd / 8 + hl / 8) / 2);
}

TEST(Score, ParseNames)
{
    EXPECT_EQ(parse_entropy_source("depth"), EntropySource::Depth);
    EXPECT_EQ(parse_entropy_source("lightness"), EntropySource::Lightness);
    EXPECT_EQ(parse_entropy_source("both"), EntropySource::DepthAndLightness);
    EXPECT_FALSE(parse_entropy_source("color").has_value());
}

#if ISV_HAVE_AVX2_KERNELS
TEST(Kernels, Avx2MatchesScalar)
{
    if (kernels::detected_isa() != kernels::Isa::Avx2) {
        GTEST_SKIP() << "CPU without AVX2";
    }
    std::mt19937_64 rng(77);
    // Odd sizes exercise the scalar tails.
    for (std::size_t n : {1u, 3u, 7u, 8u, 15u, 16u, 33u, 4096u, 4099u}) {
        std::vector<float> depth(n);
        std::vector<std::uint8_t> rgb(3 * n);
        std::uniform_real_distribution<float> u(0.0f, 1.0f);
        std::uniform_int_distribution<int> byte(0, 255);
        for (std::size_t i = 0; i < n; ++i) {
            depth[i] = (i % 5 == 0) ? 1.0f : (i % 7 == 0 ? std::nextafter(1.0f, 0.0f) : u(rng));
        }
        for (auto& c : rgb) c = static_cast<std::uint8_t>(byte(rng));

        std::vector<std::uint16_t> bs(n), bv(n);
        kernels::scalar::depth_bins(depth, bs);
        kernels::avx2::depth_bins(depth, bv);
        EXPECT_EQ(bs, bv) << n;

        std::vector<double> ys(n), yv(n);
        kernels::scalar::relative_luminance(rgb, ys);
        kernels::avx2::relative_luminance(rgb, yv);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_EQ(ys[i], yv[i]) << n << ' ' << i;
        }
    }
}

TEST(Kernels, ScoresIdenticalAcrossIsa)
{
    IsaGuard guard;
    std::mt19937_64 rng(5);
    for (int n = 0; n < 10; ++n) {
        const FrameBuffer fb = random_framebuffer(rng, 37, 29);
        kernels::set_isa_override(kernels::Isa::Scalar);
        const double s = viewpoint_score(fb, EntropySource::DepthAndLightness);
        kernels::set_isa_override(kernels::Isa::Avx2);
        const double v = viewpoint_score(fb, EntropySource::DepthAndLightness);
        EXPECT_EQ(s, v);
    }
}
#endif

TEST(Kernels, OverrideSelectsScalar)
{
    IsaGuard guard;
    kernels::set_isa_override(kernels::Isa::Scalar);
    EXPECT_EQ(kernels::active_isa(), kernels::Isa::Scalar);
    kernels::set_isa_override(std::nullopt);
    EXPECT_EQ(kernels::active_isa(), kernels::detected_isa());
}
