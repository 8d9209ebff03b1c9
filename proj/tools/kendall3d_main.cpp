#include "kendall3d/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kendall3d::cli::run(argc, argv, std::cout, std::cerr); }
