#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return facetscope::cli::cli_main(args, std::cout, std::cerr);
}
