#pragma once
// Data-parallel inner loops with a scalar reference implementation and
// ISA-specific variants chosen at runtime.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace stochbeer::simd
{
enum class Isa
{
    scalar,
    avx2,
};

std::string_view to_string(Isa isa);

struct KernelTable
{
    Isa isa;

    // sum_i a[i] * b[i]
    double (*dot)(double const* a, double const* b, std::size_t n);

    // One Welford step across a vector of independent accumulators:
    //   delta = x - mean; mean += delta * inv_count; m2 += delta * (x - mean)
    // Element-wise, no fused multiply-add, so every ISA is bit-identical.
    void (*welford_update)(double const* x,
                           double* mean,
                           double* m2,
                           double inv_count,
                           std::size_t n);
};

//! Whether the running CPU (and this build) supports the ISA.
bool supported(Isa isa);

//! Best ISA for this CPU, honoring the STOCHBEER_SIMD environment override
//! ("scalar" or "avx2").
Isa detect();

//! Kernel table for a specific ISA; throws if unsupported.
KernelTable const& kernels(Isa isa);

//! Kernel table selected by detect(), resolved once per process.
KernelTable const& active();

//! All ISAs usable on this machine, scalar first.
std::vector<Isa> available();

namespace scalar
{
double dot(double const* a, double const* b, std::size_t n);
void welford_update(double const* x,
                    double* mean,
                    double* m2,
                    double inv_count,
                    std::size_t n);
}  // namespace scalar

namespace avx2
{
double dot(double const* a, double const* b, std::size_t n);
void welford_update(double const* x,
                    double* mean,
                    double* m2,
                    double inv_count,
                    std::size_t n);
}  // namespace avx2

//---------------------------------------------------------------------------//
// Packed lower-triangular matrix times vector: out[i] = sum_{j<=i} L[i][j] x[j]
// Row i starts at offset i*(i+1)/2.
void lower_matvec(KernelTable const& k,
                  std::span<double const> packed,
                  std::span<double const> x,
                  std::span<double> out);

}  // namespace stochbeer::simd
