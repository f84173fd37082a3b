// qcawalk: command-line entry point.

#include <iostream>
#include <string>
#include <vector>

#include "qcawalk_cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qcawalk::cli::run(args, std::cout, std::cerr);
}
