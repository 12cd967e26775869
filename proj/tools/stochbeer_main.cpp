#include <iostream>

#include "stochbeer/experiment.hpp"

int main(int argc, char** argv)
{
    using namespace stochbeer;
    ExperimentConfig config;
    try
    {
        config = parse_args(argc, argv);
    }
    catch (HelpRequested const& help)
    {
        std::cout << help.what();
        return 0;
    }
    catch (UsageError const& e)
    {
        std::cerr << "usage error: " << e.what() << "\n"
                  << "run with --help for the list of flags\n";
        return 1;
    }
    return run(config, std::cout, std::cerr);
}
