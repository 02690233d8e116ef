#include <iostream>

#include "sphere7_cli/commands.hpp"

int main(int argc, char** argv) { return sphere7::cli::run(argc, argv, std::cout, std::cerr); }
