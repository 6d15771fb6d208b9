#include <iostream>

#include "caas/cli.hpp"

int main(int argc, char** argv) { return caas::run(argc, argv, std::cout, std::cerr); }
