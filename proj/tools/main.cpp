#include <iostream>

#include "nonant/cli.hpp"

int main(int argc, char** argv) { return nonant::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
