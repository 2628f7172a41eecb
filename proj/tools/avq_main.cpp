#include <iostream>

#include "avq/cli.hpp"

int main(int argc, char** argv) { return avq::cli::run(argc, argv, std::cout, std::cerr); }
