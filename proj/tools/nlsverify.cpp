#include <iostream>

#include "nls/cli.hpp"

int main(int argc, char** argv) { return nls::cli::run(argc, argv, std::cout, std::cerr); }
