#include <cp3o/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cp3o::run_cli(args, std::cout, std::cerr);
}
