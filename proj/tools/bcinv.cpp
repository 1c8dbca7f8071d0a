#include <iostream>

#include "bcinv/cli.hpp"

int main(int argc, char** argv) { return bcinv::cli::run(argc, argv, std::cout, std::cerr); }
