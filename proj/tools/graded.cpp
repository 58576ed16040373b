#include "graded/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return graded::cli::run(argc, argv, std::cout, std::cerr); }
