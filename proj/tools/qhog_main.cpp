#include <iostream>

#include "qhog/cli.hpp"

int main(int argc, char** argv) { return qhog::cli::main(argc, argv, std::cout, std::cerr); }
