#include <iostream>

#include "thicket/cli.hpp"

int main(int argc, char** argv) { return thicket::run_cli(argc, argv, std::cout, std::cerr); }
