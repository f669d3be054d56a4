#include <iostream>

#include "vgm/cli.hpp"

int main(int argc, char** argv) { return vgm::cli::run(argc, argv, std::cout, std::cerr); }
