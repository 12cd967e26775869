#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "stochbeer/averaged_law.hpp"
#include "stochbeer/errors.hpp"
#include "stochbeer/quadrature.hpp"

using namespace stochbeer;
using doctest::Approx;

namespace
{
// Frozen from the independent Simpson-Richardson oracle (and a 30-digit
// mpmath cross-check): Y(1) for zeta = 1, W(1) for zeta = 1.
constexpr double y_at_1 = 0.43076385339814819;
constexpr double w_at_1 = 0.74682413281242703;

AveragedLaw law(double alpha, ExponentConvention c, double sigma_s = 0.0)
{
    return AveragedLaw{MediumSpec{1.0, sigma_s, alpha, 10.0}, CorrelationKernel{1, 1, 2}, c};
}
}  // namespace

TEST_CASE("frozen oracle values reproduce")
{
    CHECK(oracle::ordered_gauss_integral(1, 1, 1) == Approx(y_at_1).epsilon(1e-12));
    CHECK(oracle::simpson_richardson([](double u) { return std::exp(-(1 - u) * (1 - u)); },
                                     0.0, 1.0, 256)
          == Approx(w_at_1).epsilon(1e-13));
}

TEST_CASE("inner_w")
{
    CHECK(inner_w(1.0, 0.0) == 0.0);
    CHECK(std::fabs(inner_w(1.0, 100.0) - std::sqrt(M_PI) / 2) <= 1e-12);
    CHECK(std::fabs(inner_w(0.3, 30.0) - 0.3 * std::sqrt(M_PI) / 2) <= 1e-12);
    CHECK(std::fabs(inner_w(1.0, 1.0) - w_at_1) <= 1e-6);
    CHECK(inner_w(1.0, 1.0) == Approx(w_at_1).epsilon(1e-14));
}

TEST_CASE("erf-based inner integral matches quadrature across arguments")
{
    for (double zeta : {0.1, 1.0, 5.0})
        for (double z : {0.01, 0.3, 1.0, 2.5, 7.0})
        {
            double const q = oracle::simpson_richardson(
                [&](double u) { return std::exp(-(z - u) * (z - u) / (zeta * zeta)); },
                0.0, z, 512);
            CHECK(inner_w(zeta, z) == Approx(q).epsilon(1e-12));
        }
}

TEST_CASE("outer_y")
{
    CHECK(outer_y(1.0, 0.0) == 0.0);
    CHECK(std::fabs(outer_y(1.0, 1.0) - y_at_1) <= 1e-6);
    CHECK(outer_y(1.0, 1.0) == Approx(y_at_1).epsilon(1e-14));
    double const asym = 0.5 * (std::sqrt(M_PI) * 50.0 - 1.0);
    CHECK(std::fabs(outer_y(1.0, 50.0) - asym) <= 1e-9 * asym);
    // Tiny depths: Y ~ z^2 / 2
    CHECK(outer_y(5.0, 1e-6) == Approx(0.5e-12).epsilon(1e-6));
    CHECK_THROWS_AS(outer_y(1.0, -1.0), NegativeDepth);
}

TEST_CASE("nested trapezoid converges to outer_y at second order")
{
    double const want = outer_y(1.0, 1.0);
    double const e1 = std::fabs(oracle::ordered_gauss_trapezoid(1, 1, 1, 65) - want);
    double const e2 = std::fabs(oracle::ordered_gauss_trapezoid(1, 1, 1, 129) - want);
    CHECK(oracle::observed_order(e1, e2) == Approx(2.0).epsilon(0.05));
    CHECK(oracle::ordered_gauss_trapezoid(1, 1, 1, 4097) == Approx(want).epsilon(1e-7));
}

TEST_CASE("averaged_intensity")
{
    for (auto c : {ExponentConvention::paper_half, ExponentConvention::exact})
    {
        auto const l = law(0.0, c);
        for (double z : {0.0, 0.5, 2.0, 9.0})
            CHECK(averaged_intensity(l, z) == beer(l.medium, z));
        CHECK(averaged_intensity(law(0.8, c), 0.0) == 10.0);
    }
    double const paper = 10.0 * std::exp(-1.0) * std::exp(0.32 * y_at_1);
    double const exact = 10.0 * std::exp(-1.0) * std::exp(0.64 * y_at_1);
    CHECK(averaged_intensity(law(0.8, ExponentConvention::paper_half), 1.0)
          == Approx(paper).epsilon(1e-14));
    CHECK(averaged_intensity(law(0.8, ExponentConvention::exact), 1.0)
          == Approx(exact).epsilon(1e-14));
    CHECK(paper == Approx(4.2225091053).epsilon(1e-10));
    CHECK(exact == Approx(4.8465831871).epsilon(1e-10));

    AveragedLaw colored{MediumSpec{1, 0, 0.5, 1}, CorrelationKernel{1, 1, 1}};
    CHECK_THROWS_AS(averaged_intensity(colored, 1.0), UnsupportedKernel);
    CHECK_THROWS_AS(theta(colored.kernel, 1.0), UnsupportedKernel);
    CHECK_THROWS_AS(averaged_intensity(law(0.3, ExponentConvention::exact), -1.0),
                    NegativeDepth);
}

TEST_CASE("boost factor and convention ordering (property)")
{
    for (double alpha : {0.05, 0.3, 0.8})
        for (double zeta : {0.2, 1.0, 3.0})
        {
            AveragedLaw paper{MediumSpec{1.2, 0, alpha, 2}, CorrelationKernel{0.7, zeta, 2},
                              ExponentConvention::paper_half};
            AveragedLaw exact = paper;
            exact.convention = ExponentConvention::exact;
            CHECK(boost_factor(exact, 1.2, 0.0) == 1.0);
            double prev = 1.0;
            for (double z = 0.1; z <= 10.0; z += 0.1)
            {
                double const b = boost_factor(exact, 1.2, z);
                CHECK(b >= prev);
                prev = b;
                double const e = averaged_intensity(exact, z);
                double const p = averaged_intensity(paper, z);
                CHECK(e >= p);
                CHECK(p >= beer(paper.medium, z));
            }
        }
}

TEST_CASE("beer-lambert extension")
{
    for (auto c : {ExponentConvention::paper_half, ExponentConvention::exact})
    {
        auto const absorbing = law(0.8, c);
        auto const split = AveragedLaw{MediumSpec{0.6, 0.4, 0.8, 10}, CorrelationKernel{1, 1, 2}, c};
        auto const still = AveragedLaw{MediumSpec{0.6, 0.4, 0.0, 10}, CorrelationKernel{1, 1, 2}, c};
        for (double z : {0.0, 0.4, 1.0, 3.3})
        {
            CHECK(averaged_intensity_bl(absorbing, z) == averaged_intensity(absorbing, z));
            CHECK(averaged_intensity_bl(split, z)
                  == Approx(averaged_intensity(absorbing, z)).epsilon(1e-14));
            CHECK(averaged_intensity_bl(still, z)
                  == Approx(beer_lambert(still.medium, z)).epsilon(1e-15));
        }
    }
}

TEST_CASE("theta")
{
    CorrelationKernel const k{1, 1, 2};
    CHECK(theta(k, 0.0) == 0.0);
    CHECK(theta(k, 1.0) == Approx(w_at_1).epsilon(1e-14));
    CHECK(theta(CorrelationKernel{2.5, 0.4, 2}, 80.0)
          == Approx(2.5 * std::sqrt(M_PI) / 2 * 0.4).epsilon(1e-15));
    double prev = 0.0;
    for (double z = 0.05; z < 6; z += 0.05)
    {
        double const t = theta(k, z);
        CHECK(t >= prev);
        prev = t;
    }
}

TEST_CASE("ode_residual")
{
    auto const still = law(0.0, ExponentConvention::exact);
    CHECK(ode_residual(still, 1.0, 1e-3) <= 1e-6);

    AveragedLaw l{MediumSpec{1, 0, 0.5, 10}, CorrelationKernel{1, 1, 2},
                  ExponentConvention::paper_half};
    double const r1 = ode_residual(l, 2.0, 1e-4);
    CHECK(r1 <= 1e-6);

    // Second order in the step: compare at steps large enough to dominate
    // rounding.
    double const a = ode_residual(l, 2.0, 4e-2);
    double const b = ode_residual(l, 2.0, 2e-2);
    CHECK(a / b == Approx(4.0).epsilon(0.05));

    CHECK_THROWS_AS(ode_residual(l, 2.0, 1e-13), DegenerateStep);
    CHECK_THROWS_AS(ode_residual(l, 0.5, 1.0), InvalidParameter);
}

TEST_CASE("asymptotic effective attenuation")
{
    for (auto c : {ExponentConvention::paper_half, ExponentConvention::exact})
    {
        AveragedLaw const l{MediumSpec{1, 0, 0.4, 10}, CorrelationKernel{1.3, 1, 2}, c};
        double const z = 50.0, h = 1e-3;
        double const slope
            = (std::log(averaged_intensity(l, z + h)) - std::log(averaged_intensity(l, z - h)))
              / (2 * h);
        double const g = convention_factor(c);
        double const want = -1.0 + g * 0.16 * 1.3 * std::sqrt(M_PI) / 2;
        CHECK(slope == Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("white-noise limit recovers beer")
{
    double prev = 1e300;
    for (double zeta = 1.0; zeta > 1e-6; zeta *= 0.1)
    {
        AveragedLaw const l{MediumSpec{1, 0, 0.8, 10}, CorrelationKernel{1, zeta, 2}};
        double const boost = boost_factor(l, 1.0, 3.0) - 1.0;
        CHECK(boost < prev);
        prev = boost;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("cumulant_series_exponent")
{
    CorrelationKernel const k{1, 1, 2};
    CHECK(cumulant_series_exponent(k, 0.7, 1.3, 2.0, 1) == 0.0);
    CHECK(cumulant_series_exponent(k, 1.0, 1.0, 1.0, 2) == Approx(y_at_1).epsilon(1e-12));
    CHECK(cumulant_series_exponent(k, 1.0, 1.0, 1.0, 2, ExponentConvention::paper_half)
          == Approx(0.5 * y_at_1).epsilon(1e-12));
    CHECK_THROWS_AS(cumulant_series_exponent(k, 1, 1, 1, 3), UnsupportedOrder);
    CHECK_THROWS_AS(cumulant_series_exponent(k, 1, 1, 1, 0), UnsupportedOrder);

    // Agrees with the closed-form exponent of averaged_intensity.
    AveragedLaw const l{MediumSpec{0.9, 0, 0.35, 1}, CorrelationKernel{1.4, 0.6, 2}};
    for (double z : {0.2, 1.0, 4.0})
    {
        double const closed = std::log(averaged_intensity(l, z)) + 0.9 * z;
        double const series = cumulant_series_exponent(l.kernel, 0.35, 0.9, z, 2);
        CHECK(series == Approx(closed).epsilon(1e-10));
    }

    // Other exponents are integrated numerically: kappa = 1 has
    // int_0^z int_0^z1 exp(-(z1-z2)/zeta) = zeta z - zeta^2 (1 - exp(-z/zeta)).
    CorrelationKernel const colored{1, 0.5, 1};
    double const z = 2.0;
    double const want = 0.5 * z - 0.25 * (1 - std::exp(-z / 0.5));
    CHECK(cumulant_series_exponent(colored, 1.0, 1.0, z, 2) == Approx(want).epsilon(1e-12));
}

TEST_CASE("quadrature routes agree with the closed form")
{
    for (double zeta : {0.1, 1.0, 5.0})
        for (double z : {0.0, 0.05, 0.7, 3.0, 10.0})
        {
            CorrelationKernel const k{1, zeta, 2};
            double const y = outer_y(zeta, z);
            CAPTURE(zeta);
            CAPTURE(z);
            CHECK(std::fabs(ordered_double_integral(k, z) - y) <= 1e-10 * y);
            CHECK(std::fabs(square_double_integral(k, z) - 2 * y) <= 1e-10 * y);
        }
    CHECK_THROWS_AS(ordered_double_integral(CorrelationKernel{1, 1, 2}, -1.0), NegativeDepth);
}
