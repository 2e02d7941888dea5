#include <iostream>

#include "pnrecover/cli.hpp"

int main(int argc, char** argv) { return pnrecover::runCli(argc, argv, std::cout, std::cerr); }
