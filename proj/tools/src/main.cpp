#include <iostream>

#include "nlac_cli/commands.hpp"

int main(int argc, char** argv) { return nlac::cli::run(argc, argv, std::cout, std::cerr); }
