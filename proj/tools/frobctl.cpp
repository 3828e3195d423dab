#include <iostream>

#include "frob/cli/commands.hpp"

int main(int argc, char** argv) { return frob::cli::run(argc, argv, std::cout, std::cerr); }
