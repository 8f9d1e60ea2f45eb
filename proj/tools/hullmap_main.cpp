#include <iostream>

#include "hullmap/cli.hpp"

int main(int argc, char** argv) { return hullmap::cli::run(argc, argv, std::cout, std::cerr); }
