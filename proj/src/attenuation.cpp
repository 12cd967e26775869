#include "stochbeer/attenuation.hpp"

#include <cmath>
#include <string>

#include "stochbeer/errors.hpp"

namespace stochbeer
{
namespace
{
void require_depth(double z)
{
    if (!(z >= 0.0))
        throw NegativeDepth("depth must be nonnegative, got " + std::to_string(z));
}
}  // namespace

void MediumSpec::validate() const
{
    auto nonneg = [](double v) { return v >= 0.0 && std::isfinite(v); };
    if (!nonneg(sigma_a))
        throw InvalidParameter("sigma_a must be a nonnegative number");
    if (!nonneg(sigma_s))
        throw InvalidParameter("sigma_s must be a nonnegative number");
    if (!nonneg(alpha))
        throw InvalidParameter("alpha must be a nonnegative number");
    if (!(i0 > 0.0) || !std::isfinite(i0))
        throw InvalidParameter("i0 must be positive");
}

double beer(MediumSpec const& m, double z)
{
    require_depth(z);
    return m.i0 * std::exp(-m.sigma_a * z);
}

double beer_lambert(MediumSpec const& m, double z)
{
    require_depth(z);
    return m.i0 * std::exp(-m.sigma_t() * z);
}

double beer_variable(DepthProfile const& profile,
                     double i0,
                     double z,
                     std::size_t quad_points)
{
    require_depth(z);
    if (quad_points < 2)
        throw InvalidParameter("beer_variable needs at least 2 quadrature points");
    if (z == 0.0)
        return i0;
    double const h = z / static_cast<double>(quad_points - 1);
    double sum = 0.5 * (profile(0.0) + profile(z));
    for (std::size_t i = 1; i + 1 < quad_points; ++i)
        sum += profile(static_cast<double>(i) * h);
    return i0 * std::exp(-h * sum);
}

}  // namespace stochbeer
