#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stochbeer/attenuation.hpp"
#include "stochbeer/errors.hpp"
#include "stochbeer/kernel_grf.hpp"

namespace stochbeer
{
struct Modes
{
    bool beer{true};
    bool paper{true};
    bool exact{true};
    bool mc{true};
    bool euler_check{false};

    bool any() const { return beer || paper || exact || mc || euler_check; }
    //! Canonical comma-separated spelling, e.g. "beer,paper,exact,mc".
    std::string to_string() const;
};

//---------------------------------------------------------------------------//
/*!
 * Everything one experiment run needs. Defaults reproduce the setup of the
 * reference figure: I0 = 10 W/cm^2, sigma_a = 1/cm, zeta = 1 cm, C = 1,
 * alpha = 0.8, L = 5 cm.
 */
struct ExperimentConfig
{
    MediumSpec medium{1.0, 0.0, 0.8, 10.0};
    CorrelationKernel kernel{1.0, 1.0, 2.0};
    Grid grid{Grid::resolving(5.0, 1.0)};
    std::size_t n_paths{10000};
    std::uint64_t master_seed{42};
    Modes modes{};
    std::string output{"stochbeer.csv"};
    //! Ensemble worker threads (0 = all cores); never affects results.
    unsigned threads{0};
};

class UsageError : public InvalidParameter
{
  public:
    using InvalidParameter::InvalidParameter;
};

//! Thrown by parse_args for --help; what() is the help text.
class HelpRequested : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Parses command-line flags; unspecified values keep the defaults above.
//! Throws UsageError naming the offending flag.
ExperimentConfig parse_args(std::vector<std::string> const& args);
ExperimentConfig parse_args(int argc, char const* const* argv);

//! Cross-field checks (e.g. closed-form modes need kappa = 2). Throws
//! UnsupportedKernel / InvalidParameter.
void validate(ExperimentConfig const& config);

//! One CSV data row; NaN marks a column whose mode was not selected.
struct CurveRow
{
    double z{0};
    double beer{0}, paper{0}, exact{0}, mc_mean{0}, mc_sem{0};
};

//! Runs the pipelines, writes the CSV to config.output and the text report
//! to `report`. Returns the process exit status: 0 success, 1 invalid
//! configuration, 2 numerical failure. Error messages go to `errors`.
int run(ExperimentConfig const& config, std::ostream& report, std::ostream& errors);

//! CSV text exactly as run() writes it (header comment, column header,
//! rows with 9 significant digits).
std::string format_csv(ExperimentConfig const& config, std::vector<CurveRow> const& rows);

//! Parse a CSV produced by format_csv; missing fields become NaN.
std::vector<CurveRow> parse_csv(std::string const& text);

}  // namespace stochbeer
