#include <iostream>

#include "catamp/cli/commands.hpp"

int main(int argc, char** argv) { return catamp::cli::run_cli(argc, argv, std::cout, std::cerr); }
