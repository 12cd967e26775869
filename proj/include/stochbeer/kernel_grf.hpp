#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stochbeer/simd/kernels.hpp"

namespace stochbeer
{
//---------------------------------------------------------------------------//
/*!
 * Stationary two-point correlation C * exp(-|z1 - z2|^kappa / zeta^kappa).
 *
 * kappa = 1 is exponentially correlated (colored) noise, kappa = 2 the
 * squared-exponential (Bargmann-Fock) field, larger values super-Gaussian.
 * Exponents below 1 are rejected: they lose positive-definiteness on fine
 * grids.
 */
class CorrelationKernel
{
  public:
    CorrelationKernel(double amplitude, double correlation_length, double exponent);

    double amplitude() const { return amplitude_; }
    double correlation_length() const { return length_; }
    double exponent() const { return exponent_; }

    double operator()(double z1, double z2) const;

  private:
    double amplitude_;
    double length_;
    double exponent_;
};

inline double kernel_evaluate(CorrelationKernel const& k, double z1, double z2)
{
    return k(z1, z2);
}

//---------------------------------------------------------------------------//
//! Uniform abscissae 0 = z_0 < ... < z_{n-1} = L.
class Grid
{
  public:
    Grid(double length, std::size_t n_points);

    //! Grid with spacing at most zeta/10 (resolves the correlation length).
    static Grid resolving(double length, double correlation_length);

    double length() const { return length_; }
    std::size_t size() const { return n_; }
    double spacing() const { return h_; }
    double operator[](std::size_t i) const;
    std::vector<double> abscissae() const;

    //! Cell index k and weight t so that z = z_k + t*h, with k <= n-2.
    struct Stencil
    {
        std::size_t index;
        double weight;
    };
    Stencil locate(double z) const;

    bool contains(double z) const { return z >= 0.0 && z <= length_; }

  private:
    double length_;
    std::size_t n_;
    double h_;
};

//---------------------------------------------------------------------------//
//! One realization of the field on a grid and its running integral.
class FieldPath
{
  public:
    FieldPath(Grid grid, std::vector<double> values);

    Grid const& grid() const { return grid_; }
    std::span<double const> values() const { return values_; }
    //! Trapezoid accumulation; cumulative_integral()[0] == 0.
    std::span<double const> cumulative_integral() const { return integral_; }

    //! Field value at z by linear interpolation.
    double value_at(double z) const;

    //! Every stride-th node; the grid length must divide evenly.
    FieldPath subsample(std::size_t stride) const;

  private:
    Grid grid_;
    std::vector<double> values_;
    std::vector<double> integral_;
};

//! Running integral of the field from 0 to z (linear interpolation of the
//! trapezoid accumulation). Throws OutOfDomain outside [0, L].
double stochastic_integral(FieldPath const& path, double z);

//! Dense covariance M[i][j] = k(z_i, z_j), row-major n*n.
std::vector<double> covariance_matrix(CorrelationKernel const& k, Grid const& g);

//---------------------------------------------------------------------------//
/*!
 * Zero-mean Gaussian field sampler on a fixed grid.
 *
 * The covariance is Cholesky-factored once, with diagonal jitter starting
 * at 1e-12*C and growing tenfold up to 1e-6*C. The factor is immutable, so
 * one sampler may be shared by concurrent workers.
 */
class GaussianFieldSampler
{
  public:
    GaussianFieldSampler(CorrelationKernel const& kernel, Grid const& grid);

    Grid const& grid() const { return grid_; }
    //! Jitter that was actually added to the diagonal.
    double jitter() const { return jitter_; }

    //! Path for a given seed; identical seeds give identical paths.
    FieldPath sample(std::uint64_t seed) const;

    //! Values only, written into caller storage (size == grid.size()).
    //! `normals` is scratch of the same size.
    void sample_values(std::uint64_t seed,
                       std::span<double> normals,
                       std::span<double> values) const;

    //! As above with an explicit kernel set (used for equivalence tests).
    void sample_values(std::uint64_t seed,
                       std::span<double> normals,
                       std::span<double> values,
                       simd::KernelTable const& kernels) const;

  private:
    Grid grid_;
    double jitter_{0};
    std::vector<double> packed_factor_;
};

FieldPath sample_path(CorrelationKernel const& k, Grid const& g, std::uint64_t seed);

//! Fills `out` with the trapezoid running integral of `values` at spacing h.
void trapezoid_cumulative(std::span<double const> values,
                          double h,
                          std::span<double> out);

}  // namespace stochbeer
