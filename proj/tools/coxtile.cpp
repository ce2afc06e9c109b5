#include <iostream>

#include "coxtile/cli.hpp"

int main(int argc, char** argv) { return coxtile::run_cli(argc, argv, std::cout, std::cerr); }
