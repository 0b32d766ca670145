#include <iostream>

#include "tgs/cli.hpp"

int main(int argc, char** argv) { return tgs::cli::run(argc, argv, std::cout, std::cerr); }
