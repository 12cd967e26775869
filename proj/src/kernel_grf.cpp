#include "stochbeer/kernel_grf.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "stochbeer/errors.hpp"

namespace stochbeer
{
namespace
{
constexpr std::size_t max_grid_points = 4096;
constexpr double jitter_start = 1e-12;
constexpr double jitter_cap = 1e-6;
}  // namespace

CorrelationKernel::CorrelationKernel(double amplitude,
                                     double correlation_length,
                                     double exponent)
    : amplitude_{amplitude}, length_{correlation_length}, exponent_{exponent}
{
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw InvalidParameter("kernel amplitude must be positive and finite");
    if (!(correlation_length > 0.0) || !std::isfinite(correlation_length))
        throw InvalidParameter("correlation length must be positive and finite");
    if (!(exponent >= 1.0) || !std::isfinite(exponent))
        throw InvalidParameter("kernel exponent must be >= 1");
}

double CorrelationKernel::operator()(double z1, double z2) const
{
    double const r = std::fabs(z1 - z2) / length_;
    double p;
    if (exponent_ == 2.0)
        p = r * r;
    else if (exponent_ == 1.0)
        p = r;
    else
        p = std::pow(r, exponent_);
    return amplitude_ * std::exp(-p);
}

//---------------------------------------------------------------------------//
Grid::Grid(double length, std::size_t n_points) : length_{length}, n_{n_points}
{
    if (!(length > 0.0) || !std::isfinite(length))
        throw InvalidParameter("grid length must be positive and finite");
    if (n_points < 2)
        throw InvalidParameter("grid needs at least 2 points");
    if (n_points > max_grid_points)
        throw InvalidParameter("grid has more than 4096 points");
    h_ = length / static_cast<double>(n_points - 1);
}

Grid Grid::resolving(double length, double correlation_length)
{
    if (!(correlation_length > 0.0))
        throw InvalidParameter("correlation length must be positive");
    double const cells = std::ceil(10.0 * length / correlation_length);
    if (cells + 1 > static_cast<double>(max_grid_points))
    {
        std::ostringstream os;
        os << "resolving zeta=" << correlation_length << " over L=" << length
           << " needs " << cells + 1
           << " grid points (max 4096); set the point count explicitly";
        throw InvalidParameter(os.str());
    }
    return Grid{length, std::max<std::size_t>(2, static_cast<std::size_t>(cells) + 1)};
}

double Grid::operator[](std::size_t i) const
{
    if (i + 1 == n_)
        return length_;
    return static_cast<double>(i) * h_;
}

std::vector<double> Grid::abscissae() const
{
    std::vector<double> z(n_);
    for (std::size_t i = 0; i < n_; ++i)
        z[i] = (*this)[i];
    return z;
}

Grid::Stencil Grid::locate(double z) const
{
    double const s = z / h_;
    auto k = static_cast<std::size_t>(std::max(0.0, std::floor(s)));
    k = std::min(k, n_ - 2);
    double const t = (z - (*this)[k]) / h_;
    return {k, t};
}

//---------------------------------------------------------------------------//
void trapezoid_cumulative(std::span<double const> values,
                          double h,
                          std::span<double> out)
{
    if (values.empty())
        return;
    out[0] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i)
    {
        acc += 0.5 * h * (values[i - 1] + values[i]);
        out[i] = acc;
    }
}

FieldPath::FieldPath(Grid grid, std::vector<double> values)
    : grid_{grid}, values_{std::move(values)}, integral_(values_.size())
{
    if (values_.size() != grid_.size())
        throw InvalidParameter("field path size does not match its grid");
    trapezoid_cumulative(values_, grid_.spacing(), integral_);
}

double FieldPath::value_at(double z) const
{
    if (!grid_.contains(z))
        throw OutOfDomain("depth " + std::to_string(z) + " outside [0, L]");
    auto const [k, t] = grid_.locate(z);
    return (1.0 - t) * values_[k] + t * values_[k + 1];
}

FieldPath FieldPath::subsample(std::size_t stride) const
{
    if (stride == 0 || (grid_.size() - 1) % stride != 0)
        throw InvalidParameter("subsample stride must divide the cell count");
    std::vector<double> coarse;
    coarse.reserve((grid_.size() - 1) / stride + 1);
    for (std::size_t i = 0; i < grid_.size(); i += stride)
        coarse.push_back(values_[i]);
    return FieldPath{Grid{grid_.length(), coarse.size()}, std::move(coarse)};
}

double stochastic_integral(FieldPath const& path, double z)
{
    Grid const& g = path.grid();
    if (!g.contains(z))
        throw OutOfDomain("depth " + std::to_string(z) + " outside [0, L]");
    auto const cum = path.cumulative_integral();
    if (z == 0.0)
        return 0.0;
    if (z == g.length())
        return cum.back();
    auto const [k, t] = g.locate(z);
    return (1.0 - t) * cum[k] + t * cum[k + 1];
}

//---------------------------------------------------------------------------//
std::vector<double> covariance_matrix(CorrelationKernel const& k, Grid const& g)
{
    std::size_t const n = g.size();
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
    {
        m[i * n + i] = k.amplitude();
        for (std::size_t j = 0; j < i; ++j)
        {
            double const v = k(g[i], g[j]);
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    }
    return m;
}

GaussianFieldSampler::GaussianFieldSampler(CorrelationKernel const& kernel,
                                           Grid const& grid)
    : grid_{grid}
{
    std::size_t const n = grid.size();
    auto const cov = covariance_matrix(kernel, grid);
    Eigen::Map<Eigen::MatrixXd const> base(cov.data(), static_cast<Eigen::Index>(n),
                                           static_cast<Eigen::Index>(n));

    double const c = kernel.amplitude();
    for (double rel = jitter_start; rel <= jitter_cap * (1 + 1e-9); rel *= 10)
    {
        Eigen::MatrixXd m = base;
        m.diagonal().array() += rel * c;
        Eigen::LLT<Eigen::MatrixXd> llt(m);
        if (llt.info() != Eigen::Success)
            continue;
        Eigen::MatrixXd const l = llt.matrixL();
        if (!l.allFinite())
            continue;
        jitter_ = rel * c;
        packed_factor_.resize(n * (n + 1) / 2);
        std::size_t off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                packed_factor_[off++] = l(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j));
        return;
    }
    std::ostringstream os;
    os << "Cholesky factorization failed up to jitter " << jitter_cap
       << "*C (C=" << c << ", zeta=" << kernel.correlation_length()
       << ", kappa=" << kernel.exponent() << ", n=" << n << ")";
    throw FactorizationFailure(os.str());
}

void GaussianFieldSampler::sample_values(std::uint64_t seed,
                                         std::span<double> normals,
                                         std::span<double> values,
                                         simd::KernelTable const& kernels) const
{
    std::mt19937_64 engine{seed};
    std::normal_distribution<double> normal;
    for (double& x : normals)
        x = normal(engine);
    simd::lower_matvec(kernels, packed_factor_, normals, values);
}

void GaussianFieldSampler::sample_values(std::uint64_t seed,
                                         std::span<double> normals,
                                         std::span<double> values) const
{
    sample_values(seed, normals, values, simd::active());
}

FieldPath GaussianFieldSampler::sample(std::uint64_t seed) const
{
    std::vector<double> normals(grid_.size());
    std::vector<double> values(grid_.size());
    sample_values(seed, normals, values);
    return FieldPath{grid_, std::move(values)};
}

FieldPath sample_path(CorrelationKernel const& k, Grid const& g, std::uint64_t seed)
{
    return GaussianFieldSampler{k, g}.sample(seed);
}

}  // namespace stochbeer
