#include <iostream>

#include "zalcman/cli.hpp"

int main(int argc, char** argv) { return zalcman::cli::run(argc, argv, std::cout, std::cerr); }
