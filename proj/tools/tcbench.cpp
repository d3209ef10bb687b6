#include <iostream>

#include "tc/cli/cli.hpp"

int main(int argc, char** argv) { return tc::run_cli(argc, argv, std::cout, std::cerr); }
