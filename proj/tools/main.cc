#include <iostream>

#include "coherex/cli.h"

int main(int argc, char** argv) { return coherex::cli::run(argc, argv, std::cout, std::cerr); }
