#pragma once

#include "stochbeer/kernel_grf.hpp"

namespace stochbeer
{
//! Ordered double integral  int_0^z dz1 int_0^z1 dz2 phi(z1, z2)
//! by nested adaptive Gauss-Kronrod quadrature (any kernel exponent).
double ordered_double_integral(CorrelationKernel const& k, double z);

//! Full-square double integral  int_0^z int_0^z phi(z1, z2) dz1 dz2,
//! the variance of int_0^z G. The inner range is split at the diagonal so
//! non-smooth kernels (kappa = 1) stay accurate.
double square_double_integral(CorrelationKernel const& k, double z);

}  // namespace stochbeer
