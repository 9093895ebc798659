#include <iostream>
#include <string>
#include <vector>

#include "popstack/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return popstack::cli::run(args, std::cout, std::cerr);
}
