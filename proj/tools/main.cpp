#include <iostream>

#include "kgres/cli.hpp"

int main(int argc, char** argv) { return kgres::cli::run(argc, argv, std::cout, std::cerr); }
