#include <iostream>

#include "epilip/cli.hpp"

int main(int argc, char** argv) { return epilip::cli::run(argc, argv, std::cout, std::cerr); }
