#include <iostream>
#include <string>
#include <vector>

#include "klab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    klab::cli::Result r = klab::cli::run(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
