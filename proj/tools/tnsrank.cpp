#include <iostream>

#include "tnsrank/cli.hpp"

int main(int argc, char** argv) { return tnsrank::run_cli(argc, argv, std::cout, std::cerr); }
