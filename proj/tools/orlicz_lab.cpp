#include "orlicz/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return orlicz::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
