#include <iostream>

#include "ddtcl/cli.hpp"

int main(int argc, char** argv) { return ddtcl::cli::run(argc, argv, std::cout, std::cerr); }
