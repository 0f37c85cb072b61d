#include <iostream>

#include "cxone/cli.hpp"

int main(int argc, char** argv) { return cxone::cli::run(argc, argv, std::cout, std::cerr); }
