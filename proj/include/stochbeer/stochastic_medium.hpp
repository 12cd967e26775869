#pragma once

#include <vector>

#include "stochbeer/attenuation.hpp"
#include "stochbeer/kernel_grf.hpp"

namespace stochbeer
{
//---------------------------------------------------------------------------//
/*!
 * Random absorption coefficient A(z) = sigma_a (1 + alpha G(z)), G a
 * zero-mean Gaussian field with the given correlation kernel.
 */
struct StochasticMedium
{
    MediumSpec medium;
    CorrelationKernel kernel;

    //! Standard deviation of A at any depth: alpha sigma_a sqrt(C).
    double fluctuation_std() const;
};

//! A(z) on one path; not clamped, so it may be negative for large alpha.
double absorption_at(StochasticMedium const& sm, FieldPath const& p, double z);

//! 1/2 [C^{l/2} + (-1)^l C^{l/2}]: C^{l/2} for even orders, 0 for odd.
double abs_moment(double amplitude, unsigned order);

struct MfpSeries
{
    double shift{0};            //!< S
    std::vector<double> terms;  //!< contribution of orders 1..Q_max
    bool converged{false};
    double mean_free_path{0};   //!< (1 + S) / sigma_a
};

//! Binomial expansion of E<1/A>: S = sum_{Q=1}^{Q_max} (-1)^Q R_Q^Q with
//! R_Q = alpha * abs_moment(C, Q)^{1/Q}. Throws DivergentSeries if any
//! R_Q >= 1.
MfpSeries mfp_series(StochasticMedium const& sm, unsigned max_order);

}  // namespace stochbeer
