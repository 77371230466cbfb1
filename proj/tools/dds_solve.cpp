#include "dds/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dds::run_cli(argc, argv, std::cout, std::cerr); }
