#include <iostream>

#include "mukai/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mukai::run_cli(args, std::cout, std::cerr);
}
