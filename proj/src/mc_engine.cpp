#include "stochbeer/mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "stochbeer/errors.hpp"
#include "stochbeer/quadrature.hpp"
#include "stochbeer/rng.hpp"

namespace stochbeer
{
double path_intensity(MediumSpec const& m, FieldPath const& p, double z)
{
    double const integral = stochastic_integral(p, z);
    return m.i0 * std::exp(-m.sigma_a * z - m.alpha * m.sigma_a * integral);
}

double path_intensity_em(MediumSpec const& m, FieldPath const& p, double z)
{
    Grid const& g = p.grid();
    if (!g.contains(z))
        throw OutOfDomain("depth " + std::to_string(z) + " outside [0, L]");
    auto const values = p.values();
    double const h = g.spacing();
    double intensity = m.i0;
    std::size_t k = 0;
    while (k + 1 < g.size() && g[k + 1] <= z)
    {
        double const a = m.sigma_a * (1.0 + m.alpha * values[k]);
        intensity *= 1.0 - h * a;
        ++k;
    }
    double const rest = z - g[k];
    if (rest > 0.0)
    {
        double const a = m.sigma_a * (1.0 + m.alpha * values[k]);
        intensity *= 1.0 - rest * a;
    }
    return intensity;
}

double lognormal_oracle(StochasticMedium const& sm, double z)
{
    if (!(z >= 0.0))
        throw NegativeDepth("depth must be nonnegative");
    double const b = sm.medium.alpha * sm.medium.sigma_a;
    double variance = 0.0;
    if (b != 0.0)
        variance = square_double_integral(sm.kernel, z);
    return sm.medium.i0 * std::exp(-sm.medium.sigma_a * z + 0.5 * b * b * variance);
}

std::vector<double> default_depths(Grid const& g, std::size_t max_rows)
{
    std::size_t const n = g.size();
    if (max_rows < 2)
        throw InvalidParameter("need at least 2 output rows");
    if (n <= max_rows)
        return g.abscissae();
    std::vector<double> z;
    z.reserve(max_rows);
    std::size_t last = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < max_rows; ++r)
    {
        // Integer arithmetic keeps the pick exact and monotone.
        std::size_t const idx = (r * (n - 1) + (max_rows - 1) / 2) / (max_rows - 1);
        if (idx != last)
            z.push_back(g[idx]);
        last = idx;
    }
    return z;
}

namespace
{
struct BlockResult
{
    std::size_t count{0};
    std::vector<double> mean;
    std::vector<double> m2;
    std::size_t negative{0};
    double inverse_abs_sum{0};
};

// Chan et al. pairwise update of (count, mean, m2), element-wise.
void combine(BlockResult& into, BlockResult const& b)
{
    if (b.count == 0)
        return;
    if (into.count == 0)
    {
        into = b;
        return;
    }
    double const na = static_cast<double>(into.count);
    double const nb = static_cast<double>(b.count);
    double const n = na + nb;
    for (std::size_t i = 0; i < into.mean.size(); ++i)
    {
        double const delta = b.mean[i] - into.mean[i];
        into.mean[i] += delta * (nb / n);
        into.m2[i] += b.m2[i] + delta * delta * (na * nb / n);
    }
    into.count += b.count;
    into.negative += b.negative;
    into.inverse_abs_sum += b.inverse_abs_sum;
}
}  // namespace

EnsembleStats run_ensemble(StochasticMedium const& sm,
                           Grid const& g,
                           std::size_t n_paths,
                           std::uint64_t master_seed,
                           std::vector<double> const& depths,
                           EnsembleOptions const& options)
{
    sm.medium.validate();
    if (n_paths < 2)
        throw InvalidParameter("ensemble needs at least 2 paths");
    if (depths.empty())
        throw InvalidParameter("ensemble needs at least one depth");
    for (double z : depths)
    {
        if (!g.contains(z))
            throw OutOfDomain("depth " + std::to_string(z) + " outside [0, L]");
    }
    if (options.block_size == 0)
        throw InvalidParameter("block size must be positive");

    GaussianFieldSampler const sampler{sm.kernel, g};
    simd::KernelTable const& kernels
        = options.kernels ? *options.kernels : simd::active();

    std::size_t const n = g.size();
    std::size_t const nd = depths.size();
    std::vector<Grid::Stencil> stencils(nd);
    for (std::size_t d = 0; d < nd; ++d)
        stencils[d] = g.locate(depths[d]);

    double const sigma = sm.medium.sigma_a;
    double const alpha = sm.medium.alpha;
    double const i0 = sm.medium.i0;
    double const h = g.spacing();

    std::size_t const n_blocks = (n_paths + options.block_size - 1) / options.block_size;
    std::vector<BlockResult> blocks(n_blocks);
    std::vector<double> integrals(n_paths);

    auto run_block = [&](std::size_t b) {
        std::vector<double> normals(n), values(n), cumulative(n), row(nd);
        BlockResult r;
        r.mean.assign(nd, 0.0);
        r.m2.assign(nd, 0.0);
        std::size_t const first = b * options.block_size;
        std::size_t const last = std::min(n_paths, first + options.block_size);
        for (std::size_t i = first; i < last; ++i)
        {
            sampler.sample_values(path_seed(master_seed, i), normals, values, kernels);
            trapezoid_cumulative(values, h, cumulative);
            integrals[i] = cumulative.back();

            for (std::size_t d = 0; d < nd; ++d)
            {
                double const z = depths[d];
                double x;
                if (z == 0.0)
                    x = 0.0;
                else if (z == g.length())
                    x = cumulative.back();
                else
                {
                    auto const [k, t] = stencils[d];
                    x = (1.0 - t) * cumulative[k] + t * cumulative[k + 1];
                }
                row[d] = i0 * std::exp(-sigma * z - alpha * sigma * x);
            }
            ++r.count;
            kernels.welford_update(row.data(), r.mean.data(), r.m2.data(),
                                   1.0 / static_cast<double>(r.count), nd);

            for (double v : values)
            {
                double const a = sigma * (1.0 + alpha * v);
                if (a < 0.0)
                    ++r.negative;
                r.inverse_abs_sum += 1.0 / std::fabs(a);
            }
        }
        blocks[b] = std::move(r);
    };

    unsigned workers = options.workers;
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_blocks));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b = next++; b < n_blocks; b = next++)
            run_block(b);
    };
    if (workers <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    BlockResult total;
    for (auto const& b : blocks)
        combine(total, b);

    EnsembleStats out;
    out.depths = depths;
    out.n_paths = n_paths;
    out.sampler_jitter = sampler.jitter();
    out.mean = total.mean;
    out.sem.resize(nd);
    double const np = static_cast<double>(n_paths);
    for (std::size_t d = 0; d < nd; ++d)
        out.sem[d] = std::sqrt(total.m2[d] / (np - 1.0)) / std::sqrt(np);
    double const nodes = np * static_cast<double>(n);
    out.negative_coefficient_fraction = static_cast<double>(total.negative) / nodes;
    out.mean_inverse_abs_coefficient = total.inverse_abs_sum / nodes;

    // Central moments of the path integral, two passes in index order.
    double sum = 0.0;
    for (double x : integrals)
        sum += x;
    double const mu = sum / np;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : integrals)
    {
        double const d = x - mu;
        double const d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= np;
    m3 /= np;
    m4 /= np;
    out.integral_mean = mu;
    out.integral_variance = m2 * np / (np - 1.0);
    out.integral_sem = std::sqrt(out.integral_variance / np);
    if (m2 > 0.0)
    {
        out.integral_skewness = m3 / std::pow(m2, 1.5);
        out.integral_excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }

    if (sm.medium.large_fluctuation())
    {
        out.warnings.push_back(
            "alpha >= 1: fluctuations are not small relative to the mean coefficient");
    }
    double const zmax = *std::max_element(depths.begin(), depths.end());
    if (alpha * sigma != 0.0)
    {
        double const spread
            = alpha * sigma * std::sqrt(square_double_integral(sm.kernel, zmax));
        if (spread > 1.5)
        {
            std::ostringstream os;
            os << "heavy lognormal tail: alpha*sigma_a*sqrt(V(z)) = " << spread
               << " > 1.5 at z = " << zmax << "; Monte Carlo mean is unreliable";
            out.warnings.push_back(os.str());
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
EulerCheck euler_cross_check(StochasticMedium const& sm,
                             Grid const& g,
                             std::size_t n_paths,
                             std::uint64_t master_seed)
{
    if (n_paths == 0)
        throw InvalidParameter("euler check needs at least one path");
    GaussianFieldSampler const sampler{sm.kernel, g};
    bool const can_halve = (g.size() - 1) % 2 == 0 && g.size() >= 5;
    double const z = g.length();

    EulerCheck out;
    out.n_paths = n_paths;
    double fine = 0.0, coarse = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i)
    {
        FieldPath const p = sampler.sample(path_seed(master_seed, i));
        double const exact = path_intensity(sm.medium, p, z);
        fine += std::fabs(path_intensity_em(sm.medium, p, z) - exact) / exact;
        if (can_halve)
        {
            FieldPath const q = p.subsample(2);
            double const exact_q = path_intensity(sm.medium, q, z);
            coarse += std::fabs(path_intensity_em(sm.medium, q, z) - exact_q) / exact_q;
        }
    }
    double const np = static_cast<double>(n_paths);
    out.rel_error = fine / np;
    out.rel_error_coarse = can_halve ? coarse / np : std::numeric_limits<double>::quiet_NaN();
    out.observed_order = std::log2(out.rel_error_coarse / out.rel_error);
    return out;
}

}  // namespace stochbeer
