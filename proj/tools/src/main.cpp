#include <iostream>

#include "krein/cli.hpp"

int main(int argc, char** argv) { return krein::cli::run_cli(argc, argv, std::cout, std::cerr); }
