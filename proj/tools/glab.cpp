#include <iostream>

#include "glab/cli.hpp"

int main(int argc, char** argv) { return glab::cli::main(argc, argv, std::cout, std::cerr); }
