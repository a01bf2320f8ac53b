#include <iostream>

#include "bbc/cli.hpp"

int main(int argc, char** argv) { return bbc::cli::run(argc, argv, std::cout, std::cerr); }
