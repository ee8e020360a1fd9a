#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return xcsp3kit::cli::run(argc, argv, std::cout, std::cerr); }
