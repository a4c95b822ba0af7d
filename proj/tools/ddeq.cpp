#include "ddeq/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ddeq::run_cli(argc, argv, std::cout, std::cerr); }
