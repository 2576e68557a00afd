#include "calclab/cellsum.hpp"

#include <immintrin.h>

namespace calclab::cellsum {

// AVX2 variant of pv_sum_scalar: four cells per iteration, singular cell
// masked out, scalar tail. Lane reduction order differs from the scalar
// loop, so results agree to rounding rather than bit for bit.
double pv_sum_avx2(const PvSumArgs& a) {
    const double base = a.x - a.y0;
    std::ptrdiff_t c = a.c_lo;
    const std::ptrdiff_t n = a.c_hi;
    __m256d acc = _mm256_setzero_pd();

    const __m256d vbase = _mm256_set1_pd(base);
    const __m256d vh = _mm256_set1_pd(a.h);
    const __m256d vhalf = _mm256_set1_pd(0.5);
    __m256d vidx = _mm256_setr_pd(static_cast<double>(c), static_cast<double>(c + 1),
                                  static_cast<double>(c + 2), static_cast<double>(c + 3));
    const __m256d vfour = _mm256_set1_pd(4.0);
    const __m256d vskip = _mm256_set1_pd(static_cast<double>(a.skip));

    for (; c + 4 <= n; c += 4, vidx = _mm256_add_pd(vidx, vfour)) {
        const __m256d dx = _mm256_sub_pd(vbase, _mm256_mul_pd(_mm256_add_pd(vidx, vhalf), vh));
        __m256d num = _mm256_loadu_pd(a.f + c);
        for (int j = 0; j < a.m; ++j) {
            const __m256d diff =
                _mm256_sub_pd(_mm256_set1_pd(a.ax[j]), _mm256_loadu_pd(a.a_tab[j] + c));
            num = _mm256_mul_pd(num, diff);
        }
        if (a.taylor_tab) {
            const __m256d rem = _mm256_sub_pd(
                _mm256_sub_pd(_mm256_set1_pd(a.taylor_x), _mm256_loadu_pd(a.taylor_tab + c)),
                _mm256_mul_pd(_mm256_loadu_pd(a.taylor_slope + c), dx));
            num = _mm256_mul_pd(num, rem);
        }
        __m256d den = dx;
        for (int p = 1; p < a.pw; ++p) den = _mm256_mul_pd(den, dx);
        __m256d term = _mm256_div_pd(num, den);
        if (a.skip >= c && a.skip < c + 4) {
            const __m256d is_skip = _mm256_cmp_pd(vidx, vskip, _CMP_EQ_OQ);
            term = _mm256_andnot_pd(is_skip, term);
        }
        acc = _mm256_add_pd(acc, term);
    }

    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);

    for (; c < n; ++c) {
        if (c == a.skip) continue;
        const double dx = base - (static_cast<double>(c) + 0.5) * a.h;
        double num = a.f[c];
        for (int j = 0; j < a.m; ++j) num *= a.ax[j] - a.a_tab[j][c];
        if (a.taylor_tab) num *= a.taylor_x - a.taylor_tab[c] - a.taylor_slope[c] * dx;
        double den = dx;
        for (int p = 1; p < a.pw; ++p) den *= dx;
        total += num / den;
    }
    return total;
}

}  // namespace calclab::cellsum
