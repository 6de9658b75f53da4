#include <iostream>

#include "augpulse/cli/commands.hpp"

int main(int argc, char** argv) { return augpulse::run_cli(argc, argv, std::cout, std::cerr); }
