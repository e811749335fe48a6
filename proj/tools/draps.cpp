#include <iostream>

#include "draps/cli.hpp"

int main(int argc, char** argv) { return draps::run_cli(argc, argv, std::cout, std::cerr); }
