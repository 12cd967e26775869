#pragma once

#include <stdexcept>
#include <string>

namespace stochbeer
{
// Invalid user-supplied parameters (sign, range, shape).
class InvalidParameter : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Configurations the closed forms do not cover (e.g. kappa != 2).
class UnsupportedKernel : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedOrder : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class NegativeDepth : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

class OutOfDomain : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

class DegenerateStep : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Numerical failures: the inputs were well-formed but the computation
// could not produce a trustworthy answer.
class NumericalFailure : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class FactorizationFailure : public NumericalFailure
{
  public:
    using NumericalFailure::NumericalFailure;
};

class DivergentSeries : public NumericalFailure
{
  public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace stochbeer
