#include <iostream>

#include "levy_cli/cli.hpp"

int main(int argc, char** argv) { return levy::cli::run(argc, argv, std::cout, std::cerr); }
