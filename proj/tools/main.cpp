#include "dirac/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return dirac::cli::run(argc, argv, std::cout, std::cerr);
}
