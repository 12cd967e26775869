#pragma once

#include <cstddef>
#include <functional>

namespace stochbeer
{
//---------------------------------------------------------------------------//
/*!
 * Deterministic slab parameters.
 *
 * Units: sigma_a and sigma_s in 1/cm, i0 in W/cm^2, alpha dimensionless.
 */
struct MediumSpec
{
    double sigma_a{1.0};
    double sigma_s{0.0};
    double alpha{0.0};
    double i0{1.0};

    double sigma_t() const { return sigma_a + sigma_s; }

    //! Throws InvalidParameter on negative/non-finite coefficients or i0 <= 0.
    void validate() const;

    //! alpha >= 1: fluctuations no longer small relative to the mean.
    bool large_fluctuation() const { return alpha >= 1.0; }
};

//! I0 exp(-sigma_a z). Throws NegativeDepth for z < 0.
double beer(MediumSpec const& m, double z);

//! I0 exp(-(sigma_a + sigma_s) z).
double beer_lambert(MediumSpec const& m, double z);

using DepthProfile = std::function<double(double)>;

//! I0 exp(-int_0^z sigma(Z) dZ), integral by composite trapezoid on
//! `quad_points` nodes.
double beer_variable(DepthProfile const& profile,
                     double i0,
                     double z,
                     std::size_t quad_points);

}  // namespace stochbeer
