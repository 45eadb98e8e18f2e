#include <iostream>

#include "globent/cli.hpp"

int main(int argc, char** argv) { return globent::cli::run(argc, argv, std::cout, std::cerr); }
