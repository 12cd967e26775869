#include "stochbeer/averaged_law.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stochbeer/errors.hpp"
#include "stochbeer/quadrature.hpp"

namespace stochbeer
{
namespace
{
constexpr double sqrt_pi = 1.7724538509055160272981674833411452;

void require_depth(double z)
{
    if (!(z >= 0.0))
        throw NegativeDepth("depth must be nonnegative, got " + std::to_string(z));
}

void require_gaussian_decay(CorrelationKernel const& k)
{
    if (k.exponent() != 2.0)
    {
        throw UnsupportedKernel(
            "closed-form averaged law requires kappa = 2 (got kappa = "
            + std::to_string(k.exponent()) + ")");
    }
}

double exponent(AveragedLaw const& law, double sigma, double z)
{
    double const a = law.medium.alpha;
    return convention_factor(law.convention) * a * a * sigma * sigma
           * law.kernel.amplitude() * outer_y(law.kernel.correlation_length(), z);
}
}  // namespace

double convention_factor(ExponentConvention c)
{
    return c == ExponentConvention::paper_half ? 0.5 : 1.0;
}

char const* to_string(ExponentConvention c)
{
    return c == ExponentConvention::paper_half ? "paper_half" : "exact";
}

double inner_w(double zeta, double z1)
{
    require_depth(z1);
    return 0.5 * sqrt_pi * zeta * std::erf(z1 / zeta);
}

double outer_y(double zeta, double z)
{
    require_depth(z);
    double const x = z / zeta;
    return 0.5 * zeta
           * (sqrt_pi * z * std::erf(x) + zeta * std::expm1(-x * x));
}

double theta(CorrelationKernel const& k, double z)
{
    require_gaussian_decay(k);
    return k.amplitude() * inner_w(k.correlation_length(), z);
}

double boost_factor(AveragedLaw const& law, double sigma, double z)
{
    require_gaussian_decay(law.kernel);
    return std::exp(exponent(law, sigma, z));
}

double averaged_intensity(AveragedLaw const& law, double z)
{
    require_gaussian_decay(law.kernel);
    require_depth(z);
    double const s = law.medium.sigma_a;
    return law.medium.i0 * std::exp(-s * z + exponent(law, s, z));
}

double averaged_intensity_bl(AveragedLaw const& law, double z)
{
    require_gaussian_decay(law.kernel);
    require_depth(z);
    double const s = law.medium.sigma_t();
    return law.medium.i0 * std::exp(-s * z + exponent(law, s, z));
}

double ode_residual(AveragedLaw const& law, double z, double h_fd)
{
    require_gaussian_decay(law.kernel);
    if (!(h_fd > 0.0) || !(z >= h_fd))
        throw InvalidParameter("ode_residual needs z >= h_fd > 0");
    if (h_fd < 1e-12 * std::max(1.0, z))
        throw DegenerateStep("finite-difference step below 1e-12 relative");

    double const s = law.medium.sigma_a;
    double const a = law.medium.alpha;
    double const g = convention_factor(law.convention);
    double const i = averaged_intensity(law, z);
    double const di = (averaged_intensity(law, z + h_fd)
                       - averaged_intensity(law, z - h_fd))
                      / (2.0 * h_fd);
    double const rhs = s * (g * a * a * s * theta(law.kernel, z) - 1.0) * i;
    return std::fabs(di - rhs) / i;
}

double cumulant_series_exponent(CorrelationKernel const& k,
                                double alpha,
                                double sigma_a,
                                double z,
                                unsigned max_order,
                                ExponentConvention convention)
{
    require_depth(z);
    if (max_order < 1)
        throw UnsupportedOrder("cumulant order must be at least 1");
    if (max_order > 2)
    {
        throw UnsupportedOrder(
            "Gaussian field cumulants vanish beyond order 2; order "
            + std::to_string(max_order) + " is not available");
    }
    // First cumulant: the field has zero mean.
    double total = 0.0;
    if (max_order >= 2)
    {
        double const b = alpha * sigma_a;
        total += convention_factor(convention) * b * b
                 * ordered_double_integral(k, z);
    }
    return total;
}

}  // namespace stochbeer
