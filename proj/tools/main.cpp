#include <iostream>
#include <string>
#include <vector>

#include "roadrough/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return roadrough::run_cli(args, std::cout, std::cerr);
}
