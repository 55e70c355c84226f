#include "spinframe/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return spinframe::cli::main(argc, argv, std::cout, std::cerr); }
