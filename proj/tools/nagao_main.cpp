#include <iostream>

#include "nagao/runner.hpp"

int main(int argc, char** argv) { return nagao::run_cli(argc, argv, std::cout, std::cerr); }
