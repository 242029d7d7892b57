#include <iostream>

#include "qbell/cli/runner.hpp"

int main(int argc, char** argv) { return qbell::cli::run_cli(argc, argv, std::cout, std::cerr); }
