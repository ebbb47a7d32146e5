#include <iostream>

#include "subclust/cli.hpp"

int main(int argc, char** argv) { return subclust::run_cli(argc, argv, std::cout, std::cerr); }
