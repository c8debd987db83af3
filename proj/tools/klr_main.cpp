#include <iostream>
#include <string>
#include <vector>

#include <klr/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return klr::run_cli(args, std::cout, std::cerr);
}
