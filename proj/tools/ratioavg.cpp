#include <iostream>

#include "ratioavg/cli.hpp"

int main(int argc, char** argv) { return ratioavg::cli::main_entry(argc, argv, std::cout, std::cerr); }
