#include <iostream>
#include <string>
#include <vector>

#include "bulsol/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bulsol::run_cli(args, std::cout, std::cerr);
}
