#include <iostream>

#include "qadm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qadm::run_cli(args, std::cout, std::cerr);
}
