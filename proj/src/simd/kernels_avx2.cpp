// Compiled with -mavx2 -mfma; only reached through dispatch after a CPU check.
#include <immintrin.h>

#include "stochbeer/simd/kernels.hpp"

namespace stochbeer::simd::avx2
{
namespace
{
inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d const swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}
}  // namespace

double dot(double const* a, double const* b, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
    {
        acc0 = _mm256_fmadd_pd(
            _mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(
            _mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
    {
        acc0 = _mm256_fmadd_pd(
            _mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i)
    {
        s += a[i] * b[i];
    }
    return s;
}

void welford_update(double const* x,
                    double* mean,
                    double* m2,
                    double inv_count,
                    std::size_t n)
{
    __m256d const inv = _mm256_set1_pd(inv_count);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        __m256d const xv = _mm256_loadu_pd(x + i);
        __m256d mv = _mm256_loadu_pd(mean + i);
        __m256d const delta = _mm256_sub_pd(xv, mv);
        mv = _mm256_add_pd(mv, _mm256_mul_pd(delta, inv));
        __m256d const m2v = _mm256_add_pd(
            _mm256_loadu_pd(m2 + i),
            _mm256_mul_pd(delta, _mm256_sub_pd(xv, mv)));
        _mm256_storeu_pd(mean + i, mv);
        _mm256_storeu_pd(m2 + i, m2v);
    }
    for (; i < n; ++i)
    {
        double const delta = x[i] - mean[i];
        mean[i] += delta * inv_count;
        m2[i] += delta * (x[i] - mean[i]);
    }
}

}  // namespace stochbeer::simd::avx2
