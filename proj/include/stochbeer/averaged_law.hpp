#pragma once

#include "stochbeer/attenuation.hpp"
#include "stochbeer/kernel_grf.hpp"

namespace stochbeer
{
//! Coefficient g in the boost exponent g * alpha^2 sigma^2 C Y(z).
enum class ExponentConvention
{
    paper_half,  //!< g = 1/2, the printed closed form
    exact,       //!< g = 1, the Gaussian moment identity
};

double convention_factor(ExponentConvention c);
char const* to_string(ExponentConvention c);

//---------------------------------------------------------------------------//
/*!
 * Closed-form ensemble-averaged intensity for a squared-exponential
 * (kappa = 2) random absorption coefficient:
 *
 *   I(z) = I0 exp(-sigma z) exp(g alpha^2 sigma^2 C Y(z))
 *
 * with Y the ordered double integral of exp(-(z1-z2)^2/zeta^2).
 */
struct AveragedLaw
{
    MediumSpec medium;
    CorrelationKernel kernel;
    ExponentConvention convention{ExponentConvention::exact};
};

//! W(z1) = (sqrt(pi)/2) zeta erf(z1/zeta), the inner Gaussian integral.
double inner_w(double zeta, double z1);

//! Y(z) = (zeta/2) [sqrt(pi) z erf(z/zeta) + zeta (exp(-z^2/zeta^2) - 1)].
double outer_y(double zeta, double z);

//! theta(z) = C W(z); the derivative of C Y(z).
double theta(CorrelationKernel const& k, double z);

//! Multiplicative correction exp(g alpha^2 sigma^2 C Y(z)) >= 1, with sigma
//! the attenuation coefficient passed in.
double boost_factor(AveragedLaw const& law, double sigma, double z);

double averaged_intensity(AveragedLaw const& law, double z);

//! As averaged_intensity with sigma_t = sigma_a + sigma_s throughout (the
//! absorption and scattering fluctuations share one field).
double averaged_intensity_bl(AveragedLaw const& law, double z);

//! Relative residual of the closed form against its first-order ODE
//!   I'(z) = sigma (g alpha^2 sigma theta(z) - 1) I(z)
//! using a central difference with step h_fd.
double ode_residual(AveragedLaw const& law, double z, double h_fd);

//! Truncated cumulant exponent of E<exp(-alpha sigma int_0^z G)> through
//! order max_order (1 or 2), by quadrature; any kernel exponent.
double cumulant_series_exponent(CorrelationKernel const& k,
                                double alpha,
                                double sigma_a,
                                double z,
                                unsigned max_order,
                                ExponentConvention convention = ExponentConvention::exact);

}  // namespace stochbeer
