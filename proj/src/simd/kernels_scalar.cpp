#include "stochbeer/simd/kernels.hpp"

namespace stochbeer::simd::scalar
{
double dot(double const* a, double const* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
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
    for (std::size_t i = 0; i < n; ++i)
    {
        double const delta = x[i] - mean[i];
        mean[i] += delta * inv_count;
        m2[i] += delta * (x[i] - mean[i]);
    }
}

}  // namespace stochbeer::simd::scalar
