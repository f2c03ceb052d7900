#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return k3lat::cli::run(argc, argv, std::cout, std::cerr); }
