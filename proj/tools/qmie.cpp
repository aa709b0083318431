#include <iostream>

#include "qmie/cli/commands.hpp"

int main(int argc, char** argv) { return qmie::cli::run(argc, argv, std::cout, std::cerr); }
