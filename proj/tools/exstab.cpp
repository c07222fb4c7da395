#include <iostream>
#include <string>
#include <vector>

#include "exstab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return exstab::run_cli(std::move(args), std::cout, std::cerr);
}
