#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return hnn::cli::run(argc, argv, std::cout, std::cerr); }
