#include "stochbeer/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stochbeer/errors.hpp"

namespace stochbeer
{
namespace
{
using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr unsigned max_depth = 15;
constexpr double inner_tol = 1e-12;
constexpr double outer_tol = 1e-11;

template<class F>
double integrate(F&& f, double a, double b, double tol)
{
    if (b <= a)
        return 0.0;
    return Rule::integrate(f, a, b, max_depth, tol);
}

void require_depth(double z)
{
    if (!(z >= 0.0))
        throw NegativeDepth("quadrature depth must be nonnegative");
}
}  // namespace

double ordered_double_integral(CorrelationKernel const& k, double z)
{
    require_depth(z);
    auto inner = [&k](double z1) {
        return integrate([&](double z2) { return k(z1, z2); }, 0.0, z1, inner_tol);
    };
    return integrate(inner, 0.0, z, outer_tol);
}

double square_double_integral(CorrelationKernel const& k, double z)
{
    require_depth(z);
    auto inner = [&k, z](double z1) {
        auto f = [&](double z2) { return k(z1, z2); };
        return integrate(f, 0.0, z1, inner_tol) + integrate(f, z1, z, inner_tol);
    };
    return integrate(inner, 0.0, z, outer_tol);
}

}  // namespace stochbeer
