#include <iostream>
#include <string>
#include <vector>

#include "dirac/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return dirac::cli::run(args, std::cout, std::cerr);
}
