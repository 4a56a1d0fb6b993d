#include <iostream>

#include "foldbend/cli.hpp"

int main(int argc, char** argv) { return foldbend::cli::run(argc, argv, std::cout, std::cerr); }
