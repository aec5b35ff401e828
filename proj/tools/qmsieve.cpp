#include "qmsieve/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return qms::run(args, std::cout, std::cerr);
}
