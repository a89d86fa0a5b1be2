#include <iostream>

#include "rwm/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return rwm::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
