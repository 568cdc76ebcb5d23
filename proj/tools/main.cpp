#include <iostream>

#include "hyperc/cli/commands.hpp"

int main(int argc, char** argv) { return hyperc::cli::run_cli(argc, argv, std::cout, std::cerr); }
