#include <iostream>

#include "torusctl_cli/commands.hpp"

int main(int argc, char** argv) { return torusctl::cli::run(argc, argv, std::cout, std::cerr); }
