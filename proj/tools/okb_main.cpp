#include <iostream>

#include "okb/cli.hpp"

int main(int argc, char** argv) { return okb::cli::run_cli(argc, argv, std::cout, std::cerr); }
