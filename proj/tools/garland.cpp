#include <iostream>

#include "garland/cli.hpp"

int main(int argc, char** argv) { return garland::cli::run_cli(argc, argv, std::cout, std::cerr); }
