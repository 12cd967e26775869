#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "stochbeer/averaged_law.hpp"
#include "stochbeer/errors.hpp"
#include "stochbeer/mc_engine.hpp"
#include "stochbeer/rng.hpp"

using namespace stochbeer;
using doctest::Approx;

TEST_CASE("path_intensity reductions")
{
    Grid const g{3.0, 31};
    CorrelationKernel const k{1, 1, 2};
    auto const p = sample_path(k, g, 8);
    MediumSpec const still{1.0, 0, 0.0, 10};
    for (double z : {0.0, 0.35, 1.0, 3.0})
        CHECK(path_intensity(still, p, z) == beer(still, z));

    MediumSpec const m{0.7, 0, 0.4, 5};
    CHECK(path_intensity(m, p, 0.0) == 5.0);
    FieldPath const flat{g, std::vector<double>(31, 0.5)};
    for (double z : {0.2, 1.7, 3.0})
        CHECK(path_intensity(m, flat, z)
              == Approx(5.0 * std::exp(-0.7 * (1 + 0.4 * 0.5) * z)).epsilon(1e-14));
    CHECK_THROWS_AS(path_intensity(m, p, 3.01), OutOfDomain);
}

TEST_CASE("euler integrator")
{
    MediumSpec const still{1.0, 0, 0.0, 10};
    CorrelationKernel const k{1, 1, 2};
    CHECK(path_intensity_em(still, sample_path(k, Grid{2.0, 11}, 1), 0.0) == 10.0);

    // Deterministic decay: first order in h.
    std::vector<double> errs;
    for (std::size_t n : {21u, 41u, 81u, 161u})
    {
        FieldPath const p{Grid{2.0, n}, std::vector<double>(n, 0.0)};
        errs.push_back(std::fabs(path_intensity_em(still, p, 2.0) - beer(still, 2.0)));
    }
    for (std::size_t i = 1; i < errs.size(); ++i)
        CHECK(oracle::observed_order(errs[i - 1], errs[i]) == Approx(1.0).epsilon(0.05));

    // Partial last step between nodes.
    FieldPath const p{Grid{2.0, 5}, std::vector<double>(5, 0.0)};
    CHECK(path_intensity_em(still, p, 0.75) == Approx(10 * 0.5 * 0.75).epsilon(1e-14));
    CHECK_THROWS_AS(path_intensity_em(still, p, -0.1), OutOfDomain);
}

TEST_CASE("euler step-halving extrapolation is second order on a random path")
{
    MediumSpec const m{1.0, 0, 0.3, 1};
    CorrelationKernel const k{1, 1, 2};
    Grid const fine{2.0, 513};
    auto const p = sample_path(k, fine, 2024);
    double const exact = path_intensity(m, p, 2.0);

    std::vector<double> raw, extrapolated;
    for (std::size_t stride : {16u, 8u, 4u})
    {
        auto const coarse = p.subsample(stride);
        auto const half = p.subsample(stride / 2);
        double const e_h = path_intensity_em(m, coarse, 2.0);
        double const e_half = path_intensity_em(m, half, 2.0);
        raw.push_back(std::fabs(e_half - exact));
        extrapolated.push_back(std::fabs(2 * e_half - e_h - exact));
    }
    for (std::size_t i = 0; i < raw.size(); ++i)
        CHECK(extrapolated[i] < 0.1 * raw[i]);
    CHECK(oracle::observed_order(extrapolated[0], extrapolated[1]) > 1.7);
    CHECK(oracle::observed_order(extrapolated[1], extrapolated[2]) > 1.7);
}

TEST_CASE("lognormal oracle")
{
    StochasticMedium still{{1, 0, 0.0, 10}, CorrelationKernel{1, 1, 2}};
    CHECK(lognormal_oracle(still, 2.0) == beer(still.medium, 2.0));

    StochasticMedium const sm{{1, 0, 0.8, 10}, CorrelationKernel{1, 1, 2}};
    CHECK(lognormal_oracle(sm, 1.0) == Approx(4.8465831871).epsilon(1e-10));

    for (double zeta : {0.1, 1.0, 5.0})
        for (double z : {0.0, 0.4, 2.0, 9.5})
        {
            StochasticMedium const s{{1.3, 0, 0.2, 2}, CorrelationKernel{0.9, zeta, 2}};
            AveragedLaw const law{s.medium, s.kernel, ExponentConvention::exact};
            CHECK(lognormal_oracle(s, z) == Approx(averaged_intensity(law, z)).epsilon(1e-8));
        }
    CHECK_THROWS_AS(lognormal_oracle(sm, -1.0), NegativeDepth);
}

TEST_CASE("default depths")
{
    auto const small = default_depths(Grid{5.0, 51});
    CHECK(small.size() == 51);
    auto const big = default_depths(Grid{10.0, 1001});
    CHECK(big.size() <= 256);
    CHECK(big.size() >= 250);
    CHECK(big.front() == 0.0);
    CHECK(big.back() == 10.0);
    for (std::size_t i = 1; i < big.size(); ++i)
        CHECK(big[i] > big[i - 1]);
}

TEST_CASE("ensemble without fluctuations is exact Beer")
{
    StochasticMedium const sm{{1.0, 0, 0.0, 10}, CorrelationKernel{1, 1, 2}};
    Grid const g{3.0, 31};
    auto const depths = default_depths(g);
    auto const s = run_ensemble(sm, g, 500, 9, depths);
    for (std::size_t i = 0; i < depths.size(); ++i)
    {
        CHECK(s.mean[i] == beer(sm.medium, depths[i]));
        CHECK(s.sem[i] == 0.0);
    }
    CHECK(s.negative_coefficient_fraction == 0.0);
    CHECK(s.warnings.empty());
}

TEST_CASE("ensemble is independent of worker count")
{
    StochasticMedium const sm{{1.0, 0, 0.3, 10}, CorrelationKernel{1, 0.5, 2}};
    Grid const g{3.0, 61};
    auto const depths = default_depths(g);
    EnsembleOptions opts;
    opts.block_size = 128;
    opts.workers = 1;
    auto const ref = run_ensemble(sm, g, 3000, 17, depths, opts);
    for (unsigned w : {2u, 3u, 8u})
    {
        opts.workers = w;
        auto const s = run_ensemble(sm, g, 3000, 17, depths, opts);
        CHECK(s.mean == ref.mean);
        CHECK(s.sem == ref.sem);
        CHECK(s.integral_skewness == ref.integral_skewness);
        CHECK(s.negative_coefficient_fraction == ref.negative_coefficient_fraction);
    }
    // Different kernel sets differ only by summation order.
    for (auto isa : simd::available())
    {
        opts.kernels = &simd::kernels(isa);
        auto const s = run_ensemble(sm, g, 3000, 17, depths, opts);
        for (std::size_t i = 0; i < depths.size(); ++i)
            CHECK(s.mean[i] == Approx(ref.mean[i]).epsilon(1e-12));
    }
}

TEST_CASE("ensemble mean agrees with the moment identity" * doctest::timeout(120))
{
    StochasticMedium const sm{{1.0, 0, 0.1, 10}, CorrelationKernel{1, 1, 2}};
    Grid const g = Grid::resolving(3.0, 1.0);
    std::vector<double> const depths{1.0, 2.0, 3.0};
    auto const s = run_ensemble(sm, g, 20000, 1234, depths);
    for (std::size_t i = 0; i < depths.size(); ++i)
    {
        CAPTURE(depths[i]);
        CHECK(s.sem[i] > 0.0);
        CHECK(std::fabs(s.mean[i] - lognormal_oracle(sm, depths[i])) <= 3 * s.sem[i]);
    }
    CHECK(std::fabs(s.integral_mean) <= 3 * s.integral_sem);
    CHECK(s.negative_coefficient_fraction == 0.0);
}

TEST_CASE("ensemble diagnostics and warnings")
{
    StochasticMedium const sm{{1.0, 0, 0.8, 10}, CorrelationKernel{1, 1, 2}};
    Grid const g{5.0, 51};
    auto const s = run_ensemble(sm, g, 4000, 5, default_depths(g));
    // P(G < -1/0.8) for a unit Gaussian is about 0.106
    CHECK(s.negative_coefficient_fraction == Approx(0.1056).epsilon(0.1));
    bool heavy = false;
    for (auto const& w : s.warnings)
        heavy = heavy || w.find("heavy") != std::string::npos;
    CHECK(heavy);

    StochasticMedium const large{{1.0, 0, 1.2, 10}, CorrelationKernel{1, 1, 2}};
    auto const t = run_ensemble(large, g, 100, 5, {1.0});
    CHECK(!t.warnings.empty());
}

TEST_CASE("ensemble argument errors")
{
    StochasticMedium const sm{{1.0, 0, 0.1, 10}, CorrelationKernel{1, 1, 2}};
    Grid const g{3.0, 31};
    CHECK_THROWS_AS(run_ensemble(sm, g, 1, 0, {1.0}), InvalidParameter);
    CHECK_THROWS_AS(run_ensemble(sm, g, 10, 0, {3.5}), OutOfDomain);
    CHECK_THROWS_AS(run_ensemble(sm, g, 10, 0, {}), InvalidParameter);
    StochasticMedium const bad{{1.0, 0, 0.1, 10}, CorrelationKernel{1, 1, 4}};
    CHECK_THROWS_AS(run_ensemble(bad, Grid{5.0, 401}, 10, 0, {1.0}), FactorizationFailure);
}

TEST_CASE("euler cross-check reports first order")
{
    StochasticMedium const sm{{1.0, 0, 0.3, 10}, CorrelationKernel{1, 1, 2}};
    auto const e = euler_cross_check(sm, Grid{3.0, 121}, 50, 3);
    CHECK(e.rel_error > 0.0);
    CHECK(e.observed_order == Approx(1.0).epsilon(0.1));
}
