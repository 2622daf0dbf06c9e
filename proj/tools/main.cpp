#include <iostream>

#include "pathlearn/cli.hpp"

int main(int argc, char** argv) { return pathlearn::cli::run_cli(argc, argv, std::cout, std::cerr); }
