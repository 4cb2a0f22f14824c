// Compiled with -mavx2 (no -mfma: products and sums must round exactly like the scalar path).

#include "isv/kernels.hpp"

#include <cassert>
#include <immintrin.h>

namespace isv::kernels::avx2 {

void depth_bins(std::span<const float> depth, std::span<std::uint16_t> bins)
{
    assert(bins.size() == depth.size());
    const std::size_t n = depth.size();
    const __m256 scale = _mm256_set1_ps(256.0f);
    const __m256 top = _mm256_set1_ps(255.0f);
    const __m256 one = _mm256_set1_ps(1.0f);
    const __m256i background = _mm256_set1_epi32(kBackgroundBin);

    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 d = _mm256_loadu_ps(depth.data() + i);
        const __m256 scaled = _mm256_min_ps(_mm256_floor_ps(_mm256_mul_ps(d, scale)), top);
        __m256i idx = _mm256_cvttps_epi32(scaled);
        const __m256i is_bg = _mm256_castps_si256(_mm256_cmp_ps(d, one, _CMP_EQ_OQ));
        idx = _mm256_blendv_epi8(idx, background, is_bg);
        // packus works per 128-bit lane; reorder the 64-bit halves afterwards.
        const __m256i packed = _mm256_permute4x64_epi64(_mm256_packus_epi32(idx, idx), 0b1000);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(bins.data() + i), _mm256_castsi256_si128(packed));
    }
    if (i < n) {
        scalar::depth_bins(depth.subspan(i), bins.subspan(i));
    }
}

void relative_luminance(std::span<const std::uint8_t> rgb, std::span<double> y)
{
    assert(rgb.size() == 3 * y.size());
    const std::size_t n = y.size();
    const double* lut = detail::srgb_linear_table();
    const std::uint8_t* p = rgb.data();
    const __m256d cr = _mm256_set1_pd(detail::kLumR);
    const __m256d cg = _mm256_set1_pd(detail::kLumG);
    const __m256d cb = _mm256_set1_pd(detail::kLumB);
    const __m256d white = _mm256_set1_pd(detail::kLumWhite);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const std::uint8_t* q = p + 3 * i;
        const __m128i ir = _mm_setr_epi32(q[0], q[3], q[6], q[9]);
        const __m128i ig = _mm_setr_epi32(q[1], q[4], q[7], q[10]);
        const __m128i ib = _mm_setr_epi32(q[2], q[5], q[8], q[11]);
        const __m256d r = _mm256_i32gather_pd(lut, ir, 8);
        const __m256d g = _mm256_i32gather_pd(lut, ig, 8);
        const __m256d b = _mm256_i32gather_pd(lut, ib, 8);
        const __m256d lum = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(r, cr), _mm256_mul_pd(g, cg)),
                                          _mm256_mul_pd(b, cb));
        _mm256_storeu_pd(y.data() + i, _mm256_div_pd(lum, white));
    }
    if (i < n) {
        scalar::relative_luminance(rgb.subspan(3 * i), y.subspan(i));
    }
}

} // namespace isv::kernels::avx2
