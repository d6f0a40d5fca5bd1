#include <iostream>

#include "lorentz3/cli.hpp"

int main(int argc, char** argv) { return lorentz3::run_cli(argc, argv, std::cout, std::cerr); }
