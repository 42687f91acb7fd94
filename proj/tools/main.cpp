#include <iostream>
#include <string>
#include <vector>

#include "partwin/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return partwin::cli::run(args, std::cout, std::cerr);
}
