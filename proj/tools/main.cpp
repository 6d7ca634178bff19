#include <iostream>
#include <string>
#include <vector>

#include "mqkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return mq::cli::run(args, std::cout, std::cerr);
}
