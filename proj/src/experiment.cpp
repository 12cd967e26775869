#include "stochbeer/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "stochbeer/averaged_law.hpp"
#include "stochbeer/mc_engine.hpp"
#include "stochbeer/stochastic_medium.hpp"

namespace stochbeer
{
namespace
{
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr char const* csv_columns = "z,beer,averaged_paper,averaged_exact,mc_mean,mc_sem";
constexpr std::size_t euler_paths = 100;
constexpr unsigned mfp_order = 20;

Modes parse_modes(std::string const& spec)
{
    Modes m{false, false, false, false, false};
    std::stringstream ss{spec};
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item == "beer")
            m.beer = true;
        else if (item == "paper")
            m.paper = true;
        else if (item == "exact")
            m.exact = true;
        else if (item == "mc")
            m.mc = true;
        else if (item == "euler-check")
            m.euler_check = true;
        else
            throw UsageError("--modes: unknown mode '" + item
                             + "' (expected beer, paper, exact, mc, euler-check)");
    }
    if (!m.any())
        throw UsageError("--modes: at least one mode is required");
    return m;
}

std::string fmt(double v, int digits)
{
    if (std::isnan(v))
        return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Shortest text that round-trips to the same double.
std::string exact_text(double v)
{
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string config_echo(ExperimentConfig const& c)
{
    std::ostringstream os;
    os << "# stochbeer curve data; units: z [cm], intensities [W/cm^2]; "
       << "sigma_a=" << exact_text(c.medium.sigma_a) << " [1/cm]"
       << " sigma_s=" << exact_text(c.medium.sigma_s) << " [1/cm]"
       << " alpha=" << exact_text(c.medium.alpha)
       << " i0=" << exact_text(c.medium.i0) << " [W/cm^2]"
       << " amplitude=" << exact_text(c.kernel.amplitude())
       << " zeta=" << exact_text(c.kernel.correlation_length()) << " [cm]"
       << " kappa=" << exact_text(c.kernel.exponent())
       << " length=" << exact_text(c.grid.length()) << " [cm]"
       << " grid_points=" << c.grid.size()
       << " paths=" << c.n_paths
       << " seed=" << c.master_seed
       << " modes=" << c.modes.to_string();
    return os.str();
}

struct Adjudication
{
    std::size_t rows{0};
    double max_abs_z_exact{0};
    double max_abs_z_paper{0};
    double last_z_exact{nan};
    double last_z_paper{nan};
    double last_depth{nan};
};

Adjudication adjudicate(std::vector<CurveRow> const& rows)
{
    Adjudication a;
    for (auto const& r : rows)
    {
        if (!(r.mc_sem > 0.0) || std::isnan(r.paper) || std::isnan(r.exact))
            continue;
        double const ze = (r.mc_mean - r.exact) / r.mc_sem;
        double const zp = (r.mc_mean - r.paper) / r.mc_sem;
        a.max_abs_z_exact = std::max(a.max_abs_z_exact, std::fabs(ze));
        a.max_abs_z_paper = std::max(a.max_abs_z_paper, std::fabs(zp));
        a.last_z_exact = ze;
        a.last_z_paper = zp;
        a.last_depth = r.z;
        ++a.rows;
    }
    return a;
}

void write_report(ExperimentConfig const& c,
                  std::vector<CurveRow> const& rows,
                  EnsembleStats const* stats,
                  EulerCheck const* euler,
                  MfpSeries const* mfp,
                  std::ostream& out)
{
    out << "stochbeer report\n";
    out << "  rows written: " << rows.size() << " -> " << c.output << "\n";
    out << "  grid: " << c.grid.size() << " points, h = " << c.grid.spacing()
        << " cm\n";

    if (mfp)
    {
        out << "mean free path series (Q_max = " << mfp_order << ")\n";
        out << "  shift S = " << fmt(mfp->shift, 12)
            << ", <M_A> = " << fmt(mfp->mean_free_path, 12) << " cm"
            << (mfp->converged ? "" : " (not converged)") << "\n";
    }

    if (stats)
    {
        out << "monte carlo ensemble (" << stats->n_paths << " paths, jitter "
            << stats->sampler_jitter << ")\n";
        out << "  negative-coefficient fraction: "
            << fmt(stats->negative_coefficient_fraction, 6) << "\n";
        out << "  mean of 1/|A| (pooled): "
            << fmt(stats->mean_inverse_abs_coefficient, 9) << " cm\n";
        out << "  int_0^L G: mean " << fmt(stats->integral_mean, 6) << " +- "
            << fmt(stats->integral_sem, 6) << ", skewness "
            << fmt(stats->integral_skewness, 4) << ", excess kurtosis "
            << fmt(stats->integral_excess_kurtosis, 4) << "\n";
        for (auto const& w : stats->warnings)
            out << "  warning: " << w << "\n";
    }

    if (c.modes.mc && c.modes.paper && c.modes.exact)
    {
        Adjudication const a = adjudicate(rows);
        out << "convention adjudication (from CSV values, " << a.rows
            << " rows with sem > 0)\n";
        if (a.rows == 0)
        {
            out << "  verdict: none (no fluctuations, every row has sem = 0)\n";
        }
        else
        {
            out << "  exact:      max |z| = " << fmt(a.max_abs_z_exact, 4)
                << ", z at depth " << fmt(a.last_depth, 6) << " = "
                << fmt(a.last_z_exact, 4) << "\n";
            out << "  paper_half: max |z| = " << fmt(a.max_abs_z_paper, 4)
                << ", z at depth " << fmt(a.last_depth, 6) << " = "
                << fmt(a.last_z_paper, 4) << "\n";
            bool const te = a.max_abs_z_exact <= 3.0;
            bool const tp = a.max_abs_z_paper <= 3.0;
            out << "  verdict: ";
            if (te && !tp)
                out << "MC mean tracks exact (g = 1)";
            else if (tp && !te)
                out << "MC mean tracks paper_half (g = 1/2)";
            else if (te && tp)
                out << "inconclusive (both within 3 SEM; increase paths or alpha)";
            else
                out << "neither convention within 3 SEM";
            out << "\n";
        }
    }

    if (euler)
    {
        out << "euler cross-check (" << euler->n_paths << " paths, z = L)\n";
        out << "  mean relative error: h " << fmt(euler->rel_error, 6) << ", 2h "
            << fmt(euler->rel_error_coarse, 6) << ", observed order "
            << fmt(euler->observed_order, 4) << "\n";
    }
}
}  // namespace

std::string Modes::to_string() const
{
    std::string s;
    auto add = [&s](bool on, char const* name) {
        if (!on)
            return;
        if (!s.empty())
            s += ',';
        s += name;
    };
    add(beer, "beer");
    add(paper, "paper");
    add(exact, "exact");
    add(mc, "mc");
    add(euler_check, "euler-check");
    return s;
}

//---------------------------------------------------------------------------//
ExperimentConfig parse_args(std::vector<std::string> const& args)
{
    double sigma_a = 1.0, sigma_s = 0.0, alpha = 0.8, i0 = 10.0;
    double zeta = 1.0, amplitude = 1.0, kappa = 2.0, length = 5.0;
    std::size_t grid_points = 0, paths = 10000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::string modes = "beer,paper,exact,mc";
    std::string out = "stochbeer.csv";

    CLI::App app{"Beam attenuation in a slab with a Gaussian random absorption "
                 "coefficient: closed-form averaged laws and Monte Carlo.",
                 "stochbeer"};
    auto const pos = CLI::PositiveNumber;
    auto const nonneg = CLI::NonNegativeNumber;
    app.add_option("--sigma-a", sigma_a, "Mean absorption coefficient [1/cm]")
        ->check(nonneg);
    app.add_option("--sigma-s", sigma_s, "Scattering coefficient [1/cm]")
        ->check(nonneg);
    app.add_option("--alpha", alpha, "Relative fluctuation magnitude")->check(nonneg);
    app.add_option("--i0", i0, "Incident intensity [W/cm^2]")->check(pos);
    app.add_option("--zeta", zeta, "Correlation length [cm]")->check(pos);
    app.add_option("--amplitude", amplitude, "Kernel amplitude C")->check(pos);
    app.add_option("--kappa", kappa, "Kernel exponent (>= 1)")
        ->check(CLI::Range(1.0, std::numeric_limits<double>::max()));
    app.add_option("--length", length, "Slab depth L [cm]")->check(pos);
    app.add_option("--grid-points", grid_points,
                   "Grid points (default: spacing <= zeta/10)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
    app.add_option("--paths", paths, "Monte Carlo paths")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--modes", modes,
                   "Comma list of beer,paper,exact,mc,euler-check");
    app.add_option("--out", out, "CSV output path");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        throw HelpRequested(app.help());
    }
    catch (CLI::ParseError const& e)
    {
        throw UsageError(e.what());
    }

    ExperimentConfig c;
    c.medium = MediumSpec{sigma_a, sigma_s, alpha, i0};
    try
    {
        c.kernel = CorrelationKernel{amplitude, zeta, kappa};
        c.grid = grid_points == 0 ? Grid::resolving(length, zeta)
                                  : Grid{length, grid_points};
    }
    catch (InvalidParameter const& e)
    {
        throw UsageError(std::string{grid_points == 0 ? "--grid-points: " : ""}
                         + e.what());
    }
    c.n_paths = paths;
    c.master_seed = seed;
    c.modes = parse_modes(modes);
    c.output = out;
    c.threads = threads;
    return c;
}

ExperimentConfig parse_args(int argc, char const* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return parse_args(args);
}

void validate(ExperimentConfig const& c)
{
    c.medium.validate();
    if (!c.modes.any())
        throw InvalidParameter("at least one mode is required");
    if ((c.modes.paper || c.modes.exact) && c.kernel.exponent() != 2.0)
    {
        throw UnsupportedKernel(
            "the closed-form averaged law (modes paper/exact) exists only for "
            "the squared-exponential kernel, kappa = 2; got kappa = "
            + fmt(c.kernel.exponent(), 6) + ". Use --modes beer,mc instead.");
    }
    if (c.n_paths < 2)
        throw InvalidParameter("--paths must be at least 2");
}

//---------------------------------------------------------------------------//
std::string format_csv(ExperimentConfig const& config, std::vector<CurveRow> const& rows)
{
    std::string s = config_echo(config);
    s += '\n';
    s += csv_columns;
    s += '\n';
    for (auto const& r : rows)
    {
        s += fmt(r.z, 9);
        for (double v : {r.beer, r.paper, r.exact, r.mc_mean, r.mc_sem})
        {
            s += ',';
            s += fmt(v, 9);
        }
        s += '\n';
    }
    return s;
}

std::vector<CurveRow> parse_csv(std::string const& text)
{
    std::vector<CurveRow> rows;
    std::istringstream in{text};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen)
        {
            header_seen = true;
            continue;
        }
        std::vector<double> f;
        std::stringstream ls{line};
        std::string cell;
        while (std::getline(ls, cell, ','))
            f.push_back(cell.empty() ? nan : std::stod(cell));
        while (f.size() < 6)
            f.push_back(nan);
        rows.push_back(CurveRow{f[0], f[1], f[2], f[3], f[4], f[5]});
    }
    return rows;
}

//---------------------------------------------------------------------------//
int run(ExperimentConfig const& config, std::ostream& report, std::ostream& errors)
{
    try
    {
        validate(config);
        StochasticMedium const sm{config.medium, config.kernel};

        std::optional<MfpSeries> mfp;
        if (config.medium.sigma_a > 0.0)
            mfp = mfp_series(sm, mfp_order);

        auto const depths = default_depths(config.grid);
        std::vector<CurveRow> rows(depths.size());
        AveragedLaw paper{config.medium, config.kernel, ExponentConvention::paper_half};
        AveragedLaw exact{config.medium, config.kernel, ExponentConvention::exact};
        for (std::size_t i = 0; i < depths.size(); ++i)
        {
            double const z = depths[i];
            CurveRow& r = rows[i];
            r = CurveRow{z, nan, nan, nan, nan, nan};
            if (config.modes.beer)
                r.beer = beer(config.medium, z);
            if (config.modes.paper)
                r.paper = averaged_intensity(paper, z);
            if (config.modes.exact)
                r.exact = averaged_intensity(exact, z);
        }

        std::optional<EnsembleStats> stats;
        if (config.modes.mc)
        {
            EnsembleOptions opts;
            opts.workers = config.threads;
            stats = run_ensemble(sm, config.grid, config.n_paths, config.master_seed,
                                 depths, opts);
            for (std::size_t i = 0; i < depths.size(); ++i)
            {
                rows[i].mc_mean = stats->mean[i];
                rows[i].mc_sem = stats->sem[i];
            }
        }

        std::optional<EulerCheck> euler;
        if (config.modes.euler_check)
        {
            euler = euler_cross_check(sm, config.grid,
                                      std::min(euler_paths, config.n_paths),
                                      config.master_seed);
        }

        std::string const csv = format_csv(config, rows);
        {
            std::ofstream f{config.output, std::ios::binary};
            if (!f)
                throw InvalidParameter("cannot open output file '" + config.output + "'");
            f << csv;
            if (!f)
                throw InvalidParameter("failed writing '" + config.output + "'");
        }

        // The report is computed from the CSV text so anyone can reproduce it.
        write_report(config, parse_csv(csv), stats ? &*stats : nullptr,
                     euler ? &*euler : nullptr, mfp ? &*mfp : nullptr, report);
        return 0;
    }
    catch (NumericalFailure const& e)
    {
        errors << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    catch (std::invalid_argument const& e)
    {
        errors << "invalid configuration: " << e.what() << "\n";
        return 1;
    }
    catch (std::domain_error const& e)
    {
        errors << "invalid configuration: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace stochbeer
