#include <iostream>
#include <string>
#include <vector>

#include "hcpf/cli.hpp"

int main(int argc, char ** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return hcpf::cli::run(args, std::cout, std::cerr);
}
