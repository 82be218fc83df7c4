#include <iostream>

#include "btp/cli.hpp"

int main(int argc, char** argv) { return btp::cli::run(argc, argv, std::cout, std::cerr); }
