#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stochbeer/attenuation.hpp"
#include "stochbeer/kernel_grf.hpp"
#include "stochbeer/simd/kernels.hpp"
#include "stochbeer/stochastic_medium.hpp"

namespace stochbeer
{
//! Exact pathwise solution I0 exp(-sigma_a z - alpha sigma_a int_0^z G).
double path_intensity(MediumSpec const& m, FieldPath const& p, double z);

//! Explicit Euler integration of dI = -A(z) I dz on the path grid (first
//! order in the spacing); a cross-check for path_intensity.
double path_intensity_em(MediumSpec const& m, FieldPath const& p, double z);

//! I0 exp(-sigma_a z) exp(alpha^2 sigma_a^2 V(z) / 2), V the variance of
//! int_0^z G by nested quadrature. Independent of both the sampler and the
//! erf closed form.
double lognormal_oracle(StochasticMedium const& sm, double z);

//! Grid abscissae thinned to at most max_rows evenly spread entries,
//! always keeping both endpoints.
std::vector<double> default_depths(Grid const& g, std::size_t max_rows = 256);

struct EnsembleOptions
{
    //! Worker threads; 0 means std::thread::hardware_concurrency().
    unsigned workers{0};
    //! Paths per reduction block. Results depend on this (fixed reduction
    //! topology) but never on `workers`.
    std::size_t block_size{1024};
    //! Kernel set override; nullptr uses simd::active().
    simd::KernelTable const* kernels{nullptr};
};

//---------------------------------------------------------------------------//
/*!
 * Per-depth ensemble summary of pathwise intensities.
 */
struct EnsembleStats
{
    std::vector<double> depths;
    std::vector<double> mean;
    std::vector<double> sem;
    std::size_t n_paths{0};

    //! Fraction of (path, grid node) pairs with A < 0.
    double negative_coefficient_fraction{0};
    //! Pooled sample mean of 1/|A| over paths and grid nodes.
    double mean_inverse_abs_coefficient{0};

    // Moments of X = int_0^L G over the ensemble
    double integral_mean{0};
    double integral_sem{0};
    double integral_variance{0};
    double integral_skewness{0};
    double integral_excess_kurtosis{0};

    double sampler_jitter{0};
    std::vector<std::string> warnings;
};

//! Monte Carlo estimate of E<I(z)> at each depth from n_paths independent
//! paths. Path i uses seed path_seed(master_seed, i); per-path results are
//! reduced in a fixed order, so output is independent of thread count.
EnsembleStats run_ensemble(StochasticMedium const& sm,
                           Grid const& g,
                           std::size_t n_paths,
                           std::uint64_t master_seed,
                           std::vector<double> const& depths,
                           EnsembleOptions const& options = {});

//---------------------------------------------------------------------------//
struct EulerCheck
{
    std::size_t n_paths{0};
    //! Mean over paths of |I_euler(L) - I_exact(L)| / I_exact(L)
    double rel_error{0};
    //! Same on the stride-2 subsampled path; NaN if the grid cannot halve.
    double rel_error_coarse{0};
    //! log2(rel_error_coarse / rel_error); about 1 for a first-order method.
    double observed_order{0};
};

EulerCheck euler_cross_check(StochasticMedium const& sm,
                             Grid const& g,
                             std::size_t n_paths,
                             std::uint64_t master_seed);

}  // namespace stochbeer
