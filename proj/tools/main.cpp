#include <clocale>
#include <iostream>
#include <string>
#include <vector>

#include "majorbound/cli.hpp"

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    std::vector<std::string> args(argv + 1, argv + argc);
    return majorbound::cli::run(args, std::cout, std::cerr);
}
