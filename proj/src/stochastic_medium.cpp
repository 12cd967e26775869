#include "stochbeer/stochastic_medium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stochbeer/errors.hpp"

namespace stochbeer
{
double StochasticMedium::fluctuation_std() const
{
    return medium.alpha * medium.sigma_a * std::sqrt(kernel.amplitude());
}

double absorption_at(StochasticMedium const& sm, FieldPath const& p, double z)
{
    double const g = p.value_at(z);
    return sm.medium.sigma_a * (1.0 + sm.medium.alpha * g);
}

double abs_moment(double amplitude, unsigned order)
{
    double const root = std::pow(amplitude, 0.5 * order);
    double const sign = (order % 2 == 0) ? 1.0 : -1.0;
    return 0.5 * (root + sign * root);
}

MfpSeries mfp_series(StochasticMedium const& sm, unsigned max_order)
{
    if (max_order < 1)
        throw InvalidParameter("mfp_series needs max_order >= 1");
    if (!(sm.medium.sigma_a > 0.0))
        throw InvalidParameter("mean free path needs sigma_a > 0");

    MfpSeries out;
    out.terms.reserve(max_order);
    double const alpha = sm.medium.alpha;
    for (unsigned q = 1; q <= max_order; ++q)
    {
        double const r = alpha * std::pow(abs_moment(sm.kernel.amplitude(), q),
                                          1.0 / q);
        if (r >= 1.0)
        {
            std::ostringstream os;
            os << "mean-free-path series diverges: R(alpha=" << alpha
               << ", C=" << sm.kernel.amplitude() << ", Q=" << q << ") = " << r
               << " >= 1";
            throw DivergentSeries(os.str());
        }
        // binom(-1, Q) == (-1)^Q
        double const binom = (q % 2 == 0) ? 1.0 : -1.0;
        out.terms.push_back(binom * std::pow(r, static_cast<double>(q)));
    }
    for (double t : out.terms)
        out.shift += t;
    // Odd orders vanish identically, so judge the tail on the last two terms.
    double tail = std::fabs(out.terms.back());
    if (out.terms.size() >= 2)
        tail = std::max(tail, std::fabs(out.terms[out.terms.size() - 2]));
    else
        tail = (alpha == 0.0) ? 0.0 : 1.0;
    out.converged = tail < 1e-12 * (1.0 + std::fabs(out.shift));
    out.mean_free_path = (1.0 + out.shift) / sm.medium.sigma_a;
    return out;
}

}  // namespace stochbeer
